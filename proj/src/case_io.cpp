#include "carbongrid/case_io.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "carbongrid/errors.hpp"
#include "carbongrid/version.hpp"

namespace carbongrid {

namespace {

using json = nlohmann::ordered_json;

void notify(const NoticeSink& sink, const std::string& message) {
    if (sink) {
        sink(message);
    }
}

struct Token {
    std::string text;
    int line = 0;
};

struct MatrixBlock {
    bool found = false;
    int start_line = 0;
    std::vector<std::vector<Token>> rows;
};

std::string strip_comment(const std::string& line) {
    bool in_quote = false;
    for (size_t i = 0; i < line.size(); ++i) {
        if (line[i] == '\'') {
            in_quote = !in_quote;
        } else if (line[i] == '%' && !in_quote) {
            return line.substr(0, i);
        }
    }
    return line;
}

/// Extracts `mpc.<field> = [ ... ];` (or { ... }) as token rows; rows are
/// separated by semicolons or line breaks.
MatrixBlock extract_block(const std::vector<std::string>& lines, const std::string& field,
                          char open, char close) {
    MatrixBlock block;
    const std::string key = "mpc." + field;
    for (size_t li = 0; li < lines.size(); ++li) {
        const std::string& line = lines[li];
        size_t pos = line.find(key);
        if (pos == std::string::npos) {
            continue;
        }
        const char after = pos + key.size() < line.size() ? line[pos + key.size()] : ' ';
        if (std::isalnum(static_cast<unsigned char>(after)) || after == '_') {
            continue;  // prefix of a longer field name
        }
        size_t eq = line.find('=', pos + key.size());
        if (eq == std::string::npos) {
            continue;
        }
        size_t bracket = line.find(open, eq);
        size_t cursor_line = li;
        size_t cursor_pos;
        if (bracket == std::string::npos) {
            cursor_line = li + 1;
            cursor_pos = 0;
            while (cursor_line < lines.size() &&
                   (bracket = lines[cursor_line].find(open)) == std::string::npos) {
                ++cursor_line;
            }
            if (cursor_line >= lines.size()) {
                throw ParseError("missing '" + std::string(1, open) + "' after " + key,
                                 static_cast<int>(li) + 1);
            }
            cursor_pos = bracket + 1;
        } else {
            cursor_pos = bracket + 1;
        }

        block.found = true;
        block.start_line = static_cast<int>(li) + 1;
        std::vector<Token> row;
        std::string word;
        int word_line = 0;
        auto flush_word = [&]() {
            if (!word.empty()) {
                row.push_back({word, word_line});
                word.clear();
            }
        };
        auto flush_row = [&]() {
            flush_word();
            if (!row.empty()) {
                block.rows.push_back(std::move(row));
                row.clear();
            }
        };
        for (size_t l = cursor_line; l < lines.size(); ++l) {
            const std::string& text = lines[l];
            for (size_t c = (l == cursor_line ? cursor_pos : 0); c < text.size(); ++c) {
                const char ch = text[c];
                if (ch == close) {
                    flush_row();
                    return block;
                }
                if (ch == ';') {
                    flush_row();
                } else if (std::isspace(static_cast<unsigned char>(ch)) || ch == ',') {
                    flush_word();
                } else {
                    if (word.empty()) {
                        word_line = static_cast<int>(l) + 1;
                    }
                    word.push_back(ch);
                }
            }
            flush_row();  // line break ends a row
        }
        throw ParseError("unterminated " + key + " block", block.start_line);
    }
    return block;
}

double parse_number(const Token& token) {
    const char* begin = token.text.c_str();
    char* end = nullptr;
    const double value = std::strtod(begin, &end);
    if (end != begin + token.text.size()) {
        throw ParseError("non-numeric token '" + token.text + "'", token.line);
    }
    return value;
}

std::vector<double> parse_numeric_row(const std::vector<Token>& row, size_t min_cols,
                                      const std::string& what) {
    if (row.size() < min_cols) {
        throw ParseError(what + " row has " + std::to_string(row.size()) + " columns, expected >= " +
                             std::to_string(min_cols),
                         row.empty() ? 0 : row.front().line);
    }
    std::vector<double> values;
    values.reserve(row.size());
    for (const Token& token : row) {
        values.push_back(parse_number(token));
    }
    return values;
}

std::optional<FuelType> map_fuel_metadata(std::string raw) {
    // strip quotes
    raw.erase(std::remove(raw.begin(), raw.end(), '\''), raw.end());
    raw.erase(std::remove(raw.begin(), raw.end(), '"'), raw.end());
    std::string upper(raw);
    std::transform(upper.begin(), upper.end(), upper.begin(),
                   [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    if (auto fuel = fuel_from_string(upper)) {
        return fuel;
    }
    if (upper == "COAL") return FuelType::COW;
    if (upper == "GAS" || upper == "NATURALGAS") return FuelType::NG;
    if (upper == "NUCLEAR") return FuelType::NUC;
    if (upper == "OIL" || upper == "DFO") return FuelType::PEL;
    return std::nullopt;
}

std::string case_name(const std::vector<std::string>& lines) {
    for (const std::string& line : lines) {
        const size_t fn = line.find("function");
        if (fn == std::string::npos) {
            continue;
        }
        const size_t eq = line.find('=', fn);
        if (eq == std::string::npos) {
            continue;
        }
        std::string name = line.substr(eq + 1);
        name.erase(std::remove_if(name.begin(), name.end(),
                                  [](unsigned char c) { return std::isspace(c) || c == ';'; }),
                   name.end());
        if (!name.empty()) {
            return name;
        }
    }
    return "case";
}

} // namespace

Network parse_matpower_case(std::string_view text, const ParseOptions& opts) {
    std::vector<std::string> lines;
    {
        std::string current;
        for (char c : text) {
            if (c == '\n') {
                lines.push_back(strip_comment(current));
                current.clear();
            } else if (c != '\r') {
                current.push_back(c);
            }
        }
        lines.push_back(strip_comment(current));
    }

    const MatrixBlock bus_block = extract_block(lines, "bus", '[', ']');
    const MatrixBlock gen_block = extract_block(lines, "gen", '[', ']');
    const MatrixBlock branch_block = extract_block(lines, "branch", '[', ']');
    const MatrixBlock gencost_block = extract_block(lines, "gencost", '[', ']');
    for (const auto& [name, block] :
         {std::pair{"bus", &bus_block}, {"gen", &gen_block}, {"branch", &branch_block},
          {"gencost", &gencost_block}}) {
        if (!block->found) {
            throw ParseError(std::string("missing mpc.") + name + " block");
        }
    }

    Network net;
    net.name = case_name(lines);

    if (const MatrixBlock base = extract_block(lines, "baseMVA", '=', ';'); base.found) {
        // `mpc.baseMVA = 100;` parses as a one-token row.
        if (!base.rows.empty() && !base.rows.front().empty()) {
            net.base_mva = parse_number(base.rows.front().front());
        }
    }

    // --- buses ---
    int reference_bus = -1;
    for (const auto& row : bus_block.rows) {
        const auto v = parse_numeric_row(row, 3, "bus");
        Bus bus;
        bus.id = static_cast<int>(v[0]);
        const int type = static_cast<int>(v[1]);
        bus.load_mw = v[2];
        bus.has_load = bus.load_mw != 0.0;
        bus.is_reference = type == 3;
        if (bus.is_reference && reference_bus < 0) {
            reference_bus = net.num_buses();
        }
        net.buses.push_back(bus);
    }

    // --- branches ---
    for (const auto& row : branch_block.rows) {
        const auto v = parse_numeric_row(row, 6, "branch");
        const bool online = row.size() <= 10 || v[10] != 0.0;
        if (!online) {
            notify(opts.notice, "ignoring out-of-service branch " + std::to_string((int)v[0]) +
                                    "-" + std::to_string((int)v[1]));
            continue;
        }
        Branch br;
        br.from_bus = net.bus_index(static_cast<int>(v[0]));
        br.to_bus = net.bus_index(static_cast<int>(v[1]));
        if (br.from_bus < 0 || br.to_bus < 0) {
            throw ParseError("branch references unknown bus " +
                                 std::to_string(static_cast<int>(br.from_bus < 0 ? v[0] : v[1])),
                             row.front().line);
        }
        br.reactance = v[3];
        const double rate_a = v[5];
        const double limit = rate_a > 0.0 ? rate_a : opts.unlimited_flow_mw;
        if (rate_a <= 0.0) {
            notify(opts.notice, "branch " + std::to_string((int)v[0]) + "-" +
                                    std::to_string((int)v[1]) + " has no thermal limit; using ±" +
                                    std::to_string(opts.unlimited_flow_mw) + " MW");
        }
        br.flow_max = limit;
        br.flow_min = -limit;
        if (row.size() > 8 && v[8] != 0.0 && v[8] != 1.0) {
            notify(opts.notice, "ignoring off-nominal tap ratio on branch " +
                                    std::to_string((int)v[0]) + "-" + std::to_string((int)v[1]));
        }
        net.branches.push_back(br);
    }

    // --- generators (keep gencost row alignment before dropping offline units) ---
    struct RawGen {
        Generator gen;
        bool online = true;
        int line = 0;
    };
    std::vector<RawGen> raw_gens;
    for (const auto& row : gen_block.rows) {
        const auto v = parse_numeric_row(row, 10, "gen");
        RawGen raw;
        raw.line = row.front().line;
        raw.gen.bus = net.bus_index(static_cast<int>(v[0]));
        if (raw.gen.bus < 0) {
            throw ParseError("generator references unknown bus " +
                                 std::to_string(static_cast<int>(v[0])),
                             row.front().line);
        }
        raw.online = v[7] > 0.0;
        raw.gen.p_max = v[8];
        raw.gen.p_min = v[9];
        raw_gens.push_back(raw);
    }

    if (gencost_block.rows.size() != raw_gens.size()) {
        throw ParseError("gencost has " + std::to_string(gencost_block.rows.size()) +
                             " rows for " + std::to_string(raw_gens.size()) + " generators",
                         gencost_block.start_line);
    }
    for (size_t i = 0; i < raw_gens.size(); ++i) {
        const auto& row = gencost_block.rows[i];
        const auto v = parse_numeric_row(row, 4, "gencost");
        const int model = static_cast<int>(v[0]);
        const int ncoef = static_cast<int>(v[3]);
        if (model != 2) {
            throw ParseError("unsupported cost model " + std::to_string(model) +
                                 " (only polynomial costs are supported)",
                             row.front().line);
        }
        if (ncoef > 3) {
            throw ParseError("unsupported cost degree " + std::to_string(ncoef - 1),
                             row.front().line);
        }
        if (row.size() < 4 + static_cast<size_t>(ncoef)) {
            throw ParseError("gencost row missing coefficients", row.front().line);
        }
        // coefficients are listed highest degree first
        double c2 = 0.0, c1 = 0.0, c0 = 0.0;
        if (ncoef == 3) {
            c2 = v[4];
            c1 = v[5];
            c0 = v[6];
        } else if (ncoef == 2) {
            c1 = v[4];
            c0 = v[5];
        } else if (ncoef == 1) {
            c0 = v[4];
        }
        (void)c0;  // constant offsets do not affect dispatch
        raw_gens[i].gen.cost_quadratic = c2;
        raw_gens[i].gen.cost_linear = c1;
    }

    // --- optional fuel metadata ---
    const MatrixBlock fuel_block = extract_block(lines, "genfuel", '{', '}');
    if (fuel_block.found) {
        if (fuel_block.rows.size() != raw_gens.size()) {
            throw ParseError("genfuel has " + std::to_string(fuel_block.rows.size()) +
                                 " entries for " + std::to_string(raw_gens.size()) + " generators",
                             fuel_block.start_line);
        }
        for (size_t i = 0; i < fuel_block.rows.size(); ++i) {
            const std::string raw = fuel_block.rows[i].front().text;
            if (auto fuel = map_fuel_metadata(raw)) {
                raw_gens[i].gen.fuel = fuel;
            } else {
                notify(opts.notice, "unmapped fuel string " + raw + " for generator " +
                                        std::to_string(i) + "; will use the configured default");
            }
        }
    }

    for (const RawGen& raw : raw_gens) {
        if (!raw.online) {
            notify(opts.notice, "ignoring out-of-service generator at bus " +
                                    std::to_string(net.buses[raw.gen.bus].id));
            continue;
        }
        Generator gen = raw.gen;
        gen.id = net.num_generators();
        net.generators.push_back(gen);
    }

    if (opts.slack_bus_override >= 0) {
        if (opts.slack_bus_override >= net.num_buses()) {
            throw ParseError("slack bus override out of range");
        }
        net.slack_bus = opts.slack_bus_override;
    } else {
        if (reference_bus < 0) {
            throw ParseError("case file declares no reference bus (type 3)");
        }
        net.slack_bus = reference_bus;
    }

    net.validate();
    return net;
}

Network parse_matpower_file(const std::filesystem::path& path, const ParseOptions& opts) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open case file: " + path.string());
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_matpower_case(buffer.str(), opts);
}

bool FuelDictionary::covers(const Network& net) const {
    for (const Generator& gen : net.generators) {
        if (entries.find(gen.id) == entries.end()) {
            return false;
        }
    }
    return true;
}

FuelDictionary fuel_dict_generation(const Network& net, FuelType default_fuel,
                                    const NoticeSink& notice) {
    FuelDictionary dict;
    for (const Generator& gen : net.generators) {
        FuelAssignment assignment;
        assignment.metric = EmissionMetric::CO2;
        if (gen.fuel) {
            assignment.fuel = *gen.fuel;
        } else {
            assignment.fuel = default_fuel;
            notify(notice, "generator " + std::to_string(gen.id) +
                               " has no fuel metadata; defaulting to " +
                               std::string(to_string(default_fuel)));
        }
        dict.entries[gen.id] = assignment;
    }
    return dict;
}

FuelDictionary load_fuel_dictionary(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open fuel dictionary: " + path.string());
    }
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::exception& e) {
        throw ParseError("malformed fuel dictionary: " + std::string(e.what()));
    }
    FuelDictionary dict;
    for (const auto& [key, value] : doc.items()) {
        int id = 0;
        try {
            id = std::stoi(key);
        } catch (const std::exception&) {
            throw ParseError("fuel dictionary key '" + key + "' is not a generator id");
        }
        const std::string type = value.at("type").get<std::string>();
        const auto fuel = fuel_from_string(type);
        if (!fuel) {
            throw TaxonomyError("unknown fuel code '" + type + "' for generator " + key);
        }
        FuelAssignment assignment;
        assignment.fuel = *fuel;
        if (value.contains("emissions")) {
            const std::string metric = value.at("emissions").get<std::string>();
            const auto parsed = metric_from_string(metric);
            if (!parsed) {
                throw TaxonomyError("unknown emission metric '" + metric + "' for generator " +
                                    key);
            }
            assignment.metric = *parsed;
        }
        dict.entries[id] = assignment;
    }
    return dict;
}

EnrichedNetwork carbon_casefile(const Network& net, const FuelDictionary& dict,
                                Provenance provenance) {
    std::vector<int> missing;
    for (const Generator& gen : net.generators) {
        if (dict.entries.find(gen.id) == dict.entries.end()) {
            missing.push_back(gen.id);
        }
    }
    if (!missing.empty()) {
        std::ostringstream msg;
        msg << "fuel dictionary does not cover generator ids {";
        for (size_t i = 0; i < missing.size(); ++i) {
            msg << (i ? ", " : "") << missing[i];
        }
        msg << "}";
        throw CoverageError(msg.str());
    }

    EnrichedNetwork enriched;
    enriched.network = net;
    enriched.dictionary = dict;
    enriched.provenance = std::move(provenance);
    if (enriched.provenance.source_case.empty()) {
        enriched.provenance.source_case = net.name;
    }
    if (enriched.provenance.tool.empty()) {
        enriched.provenance.tool = std::string("carbongrid ") + kVersion;
    }
    for (Generator& gen : enriched.network.generators) {
        const FuelAssignment& assignment = dict.entries.at(gen.id);
        gen.fuel = assignment.fuel;
        gen.metric = assignment.metric;
        gen.intensity = emission_intensity(assignment.fuel, assignment.metric);
    }
    enriched.network.validate();
    return enriched;
}

namespace {

json dictionary_to_json(const FuelDictionary& dict) {
    json out = json::object();
    for (const auto& [id, assignment] : dict.entries) {
        out[std::to_string(id)] = {{"type", std::string(to_string(assignment.fuel))},
                                   {"emissions", std::string(to_string(assignment.metric))}};
    }
    return out;
}

} // namespace

std::string enriched_to_json(const EnrichedNetwork& enriched) {
    const Network& net = enriched.network;
    json doc;
    doc["schema_version"] = 1;
    doc["kind"] = "carbongrid-enriched-case";
    doc["provenance"] = {{"source_case", enriched.provenance.source_case},
                         {"fuel_source", enriched.provenance.fuel_source},
                         {"tool", enriched.provenance.tool}};
    doc["base_mva"] = net.base_mva;
    doc["slack_bus"] = net.buses[net.slack_bus].id;
    json buses = json::array();
    for (const Bus& bus : net.buses) {
        buses.push_back(
            {{"id", bus.id}, {"load_mw", bus.load_mw}, {"is_load", bus.has_load}});
    }
    doc["buses"] = std::move(buses);
    json branches = json::array();
    for (const Branch& br : net.branches) {
        branches.push_back({{"from", net.buses[br.from_bus].id},
                            {"to", net.buses[br.to_bus].id},
                            {"reactance_pu", br.reactance},
                            {"flow_min_mw", br.flow_min},
                            {"flow_max_mw", br.flow_max}});
    }
    doc["branches"] = std::move(branches);
    json generators = json::array();
    for (const Generator& gen : net.generators) {
        generators.push_back({{"id", gen.id},
                              {"bus", net.buses[gen.bus].id},
                              {"cost_linear_usd_per_mwh", gen.cost_linear},
                              {"cost_quadratic_usd_per_mwh2", gen.cost_quadratic},
                              {"p_min_mw", gen.p_min},
                              {"p_max_mw", gen.p_max},
                              {"fuel", std::string(to_string(gen.fuel.value()))},
                              {"metric", std::string(to_string(gen.metric))},
                              {"intensity_t_per_mwh", gen.intensity}});
    }
    doc["generators"] = std::move(generators);
    doc["fuel_dictionary"] = dictionary_to_json(enriched.dictionary);
    return doc.dump(2) + "\n";
}

EnrichedNetwork enriched_from_json(std::string_view json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::exception& e) {
        throw ParseError("malformed enriched case document: " + std::string(e.what()));
    }
    try {
        if (!doc.contains("schema_version") || doc["schema_version"].get<int>() != 1) {
            throw IoError("enriched case schema-version mismatch (expected 1)");
        }
        EnrichedNetwork enriched;
        Network& net = enriched.network;
        enriched.provenance.source_case = doc["provenance"].value("source_case", "");
        enriched.provenance.fuel_source = doc["provenance"].value("fuel_source", "");
        enriched.provenance.tool = doc["provenance"].value("tool", "");
        net.name = enriched.provenance.source_case;
        net.base_mva = doc["base_mva"].get<double>();
        for (const auto& item : doc["buses"]) {
            Bus bus;
            bus.id = item.at("id").get<int>();
            bus.load_mw = item.at("load_mw").get<double>();
            bus.has_load = item.at("is_load").get<bool>();
            net.buses.push_back(bus);
        }
        const int slack_id = doc["slack_bus"].get<int>();
        net.slack_bus = net.bus_index(slack_id);
        if (net.slack_bus < 0) {
            throw IoError("slack bus " + std::to_string(slack_id) + " not in bus list");
        }
        net.buses[net.slack_bus].is_reference = true;
        for (const auto& item : doc["branches"]) {
            Branch br;
            br.from_bus = net.bus_index(item.at("from").get<int>());
            br.to_bus = net.bus_index(item.at("to").get<int>());
            if (br.from_bus < 0 || br.to_bus < 0) {
                throw IoError("branch references unknown bus");
            }
            br.reactance = item.at("reactance_pu").get<double>();
            br.flow_min = item.at("flow_min_mw").get<double>();
            br.flow_max = item.at("flow_max_mw").get<double>();
            net.branches.push_back(br);
        }
        for (const auto& item : doc["generators"]) {
            Generator gen;
            gen.id = item.at("id").get<int>();
            gen.bus = net.bus_index(item.at("bus").get<int>());
            if (gen.bus < 0) {
                throw IoError("generator references unknown bus");
            }
            gen.cost_linear = item.at("cost_linear_usd_per_mwh").get<double>();
            gen.cost_quadratic = item.at("cost_quadratic_usd_per_mwh2").get<double>();
            gen.p_min = item.at("p_min_mw").get<double>();
            gen.p_max = item.at("p_max_mw").get<double>();
            const std::string fuel_code = item.at("fuel").get<std::string>();
            const auto fuel = fuel_from_string(fuel_code);
            if (!fuel) {
                throw TaxonomyError("unknown fuel code '" + fuel_code + "' in enriched case");
            }
            const auto metric = metric_from_string(item.at("metric").get<std::string>());
            if (!metric) {
                throw TaxonomyError("unknown emission metric in enriched case");
            }
            gen.fuel = *fuel;
            gen.metric = *metric;
            gen.intensity = item.at("intensity_t_per_mwh").get<double>();
            if (gen.intensity != emission_intensity(*fuel, *metric)) {
                throw IoError("generator " + std::to_string(gen.id) +
                              " intensity does not match its fuel/metric assignment");
            }
            net.generators.push_back(gen);
        }
        for (const auto& [key, value] : doc["fuel_dictionary"].items()) {
            FuelAssignment assignment;
            const auto fuel = fuel_from_string(value.at("type").get<std::string>());
            if (!fuel) {
                throw TaxonomyError("unknown fuel code in embedded dictionary");
            }
            assignment.fuel = *fuel;
            const auto metric = metric_from_string(value.at("emissions").get<std::string>());
            if (!metric) {
                throw TaxonomyError("unknown emission metric in embedded dictionary");
            }
            assignment.metric = *metric;
            enriched.dictionary.entries[std::stoi(key)] = assignment;
        }
        net.validate();
        return enriched;
    } catch (const json::exception& e) {
        throw ParseError("malformed enriched case document: " + std::string(e.what()));
    }
}

void save_enriched(const EnrichedNetwork& enriched, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot write enriched case: " + path.string());
    }
    out << enriched_to_json(enriched);
    if (!out) {
        throw IoError("write failed: " + path.string());
    }
}

EnrichedNetwork load_enriched(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open enriched case: " + path.string());
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return enriched_from_json(buffer.str());
}

std::uint64_t case_fingerprint(const EnrichedNetwork& enriched) {
    std::uint64_t hash = 1469598103934665603ULL;  // FNV-1a offset basis
    auto mix_bytes = [&hash](const void* data, size_t size) {
        const auto* bytes = static_cast<const unsigned char*>(data);
        for (size_t i = 0; i < size; ++i) {
            hash ^= bytes[i];
            hash *= 1099511628211ULL;
        }
    };
    auto mix_int = [&](std::int64_t v) { mix_bytes(&v, sizeof v); };
    auto mix_double = [&](double v) {
        const auto bits = std::bit_cast<std::uint64_t>(v);
        mix_bytes(&bits, sizeof bits);
    };

    const Network& net = enriched.network;
    mix_int(net.num_buses());
    mix_int(net.num_branches());
    mix_int(net.num_generators());
    mix_int(net.slack_bus);
    mix_double(net.base_mva);
    for (const Bus& bus : net.buses) {
        mix_int(bus.id);
        mix_double(bus.load_mw);
        mix_int(bus.has_load ? 1 : 0);
    }
    for (const Branch& br : net.branches) {
        mix_int(br.from_bus);
        mix_int(br.to_bus);
        mix_double(br.reactance);
        mix_double(br.flow_min);
        mix_double(br.flow_max);
    }
    for (const Generator& gen : net.generators) {
        mix_int(gen.id);
        mix_int(gen.bus);
        mix_double(gen.cost_linear);
        mix_double(gen.cost_quadratic);
        mix_double(gen.p_min);
        mix_double(gen.p_max);
        mix_int(gen.fuel ? static_cast<int>(*gen.fuel) : -1);
        mix_int(static_cast<int>(gen.metric));
        mix_double(gen.intensity);
    }
    return hash;
}

} // namespace carbongrid
