#include "carbongrid/serve.hpp"

#include <sstream>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "carbongrid/cli.hpp"
#include "carbongrid/errors.hpp"

namespace carbongrid {

namespace {

using json = nlohmann::ordered_json;

json vector_to_json(const Eigen::VectorXd& v) {
    json arr = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        arr.push_back(v[i]);
    }
    return arr;
}

std::optional<Eigen::VectorXd> vector_from_json(const json& doc, const std::string& key,
                                                std::string& error) {
    if (!doc.contains(key) || !doc[key].is_array()) {
        error = "body must carry a numeric array '" + key + "'";
        return std::nullopt;
    }
    Eigen::VectorXd v(doc[key].size());
    Eigen::Index i = 0;
    for (const auto& item : doc[key]) {
        if (!item.is_number()) {
            error = "'" + key + "' entries must be numbers";
            return std::nullopt;
        }
        v[i++] = item.get<double>();
    }
    return v;
}

void reply_json(httplib::Response& res, int status, const json& body) {
    res.status = status;
    res.set_content(body.dump(2) + "\n", "application/json");
}

} // namespace

struct RegionServer::Impl {
    RegionTable table;
    httplib::Server server;

    explicit Impl(RegionTable t) : table(std::move(t)) {
        server.Get("/regions", [this](const httplib::Request&, httplib::Response& res) {
            json domain = json::array();
            for (int i = 0; i < table.domain.dim(); ++i) {
                domain.push_back({table.domain.lower[i], table.domain.upper[i]});
            }
            std::ostringstream fp;
            fp << std::hex << table.fingerprint;
            reply_json(res, 200,
                       {{"regions", table.regions.size()},
                        {"domain", std::move(domain)},
                        {"load_buses", table.load_bus_ids},
                        {"num_gens", table.num_gens},
                        {"fingerprint", fp.str()}});
        });

        server.Post("/lmce", [this](const httplib::Request& req, httplib::Response& res) {
            json doc = json::parse(req.body, nullptr, false);
            if (doc.is_discarded()) {
                reply_json(res, 400, {{"error", "malformed JSON body"}});
                return;
            }
            std::string error;
            const auto loads = vector_from_json(doc, "loads", error);
            if (!loads) {
                reply_json(res, 400, {{"error", error}});
                return;
            }
            if (loads->size() != table.num_loads) {
                reply_json(res, 400,
                           {{"error", "loads must have " + std::to_string(table.num_loads) +
                                          " entries (see /regions load_buses)"}});
                return;
            }
            const LocateResult located = locate_region(table, *loads);
            if (located.status == LocateStatus::Infeasible) {
                reply_json(res, 422, {{"error", located.diagnostic}, {"kind", "infeasible"}});
                return;
            }
            if (located.status == LocateStatus::Uncovered) {
                reply_json(res, 422, {{"error", located.diagnostic}, {"kind", "uncovered"}});
                return;
            }
            const Region& region = table.regions[static_cast<size_t>(located.region)];
            reply_json(res, 200,
                       {{"region", located.region},
                        {"lmce", vector_to_json(region.lmce)},
                        {"lmp", vector_to_json(region.lmp)}});
        });

        server.Post("/lmce/from-lmp", [this](const httplib::Request& req,
                                             httplib::Response& res) {
            json doc = json::parse(req.body, nullptr, false);
            if (doc.is_discarded()) {
                reply_json(res, 400, {{"error", "malformed JSON body"}});
                return;
            }
            std::string error;
            const auto lmp = vector_from_json(doc, "lmp", error);
            if (!lmp) {
                reply_json(res, 400, {{"error", error}});
                return;
            }
            if (lmp->size() != table.num_loads) {
                reply_json(res, 400,
                           {{"error", "lmp must have " + std::to_string(table.num_loads) +
                                          " entries"}});
                return;
            }
            try {
                const int index = region_from_lmp(table, *lmp);
                const Region& region = table.regions[static_cast<size_t>(index)];
                reply_json(res, 200,
                           {{"region", index},
                            {"lmce", vector_to_json(region.lmce)},
                            {"lmp", vector_to_json(region.lmp)}});
            } catch (const AmbiguityError& e) {
                reply_json(res, 422, {{"error", e.what()}, {"kind", "ambiguous"}});
            }
        });
    }
};

RegionServer::RegionServer(RegionTable table) : impl_(std::make_unique<Impl>(std::move(table))) {}
RegionServer::~RegionServer() = default;

int RegionServer::bind_any(const std::string& host) {
    return impl_->server.bind_to_any_port(host);
}

bool RegionServer::listen_after_bind() {
    return impl_->server.listen_after_bind();
}

bool RegionServer::listen(const std::string& host, int port) {
    return impl_->server.listen(host, port);
}

void RegionServer::stop() {
    impl_->server.stop();
}

int cmd_serve(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        if (cfg.table_path.empty()) {
            throw ContractError("a region table is required (--table <table.bin>)");
        }
        RegionTable table;
        if (!cfg.enriched_path.empty()) {
            // refuse to start on a stale table
            table = load_table(cfg.table_path, load_enriched(cfg.enriched_path));
        } else {
            table = load_table(cfg.table_path);
        }
        RegionServer server(std::move(table));
        out << "serving on http://" << cfg.bind_host << ":" << cfg.bind_port
            << " (GET /regions, POST /lmce, POST /lmce/from-lmp)\n"
            << std::flush;
        if (!server.listen(cfg.bind_host, cfg.bind_port)) {
            err << "error: cannot bind " << cfg.bind_host << ":" << cfg.bind_port << "\n";
            return kExitComputational;
        }
        return kExitOk;
    } catch (const StaleTableError& e) {
        err << "error: refusing to serve: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}

} // namespace carbongrid
