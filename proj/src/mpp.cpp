#include "carbongrid/mpp.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <deque>
#include <fstream>
#include <map>
#include <random>
#include <sstream>

#include <Eigen/LU>

#include "carbongrid/errors.hpp"

namespace carbongrid {

namespace {

void notify(const NoticeSink& sink, const std::string& message) {
    if (sink) {
        sink(message);
    }
}

double row_tolerance(double k) {
    return 1e-9 * std::max(1.0, std::abs(k));
}

Eigen::VectorXd region_lmce(const Eigen::MatrixXd& jacobian, const Eigen::VectorXd& intensities) {
    return jacobian.transpose() * intensities;
}

Eigen::VectorXd region_lmp(const Eigen::MatrixXd& jacobian, const Eigen::VectorXd& f) {
    return jacobian.transpose() * f;
}

} // namespace

bool LoadDomain::contains(const Eigen::VectorXd& load, double tol) const {
    if (load.size() != lower.size()) {
        return false;
    }
    for (Eigen::Index i = 0; i < load.size(); ++i) {
        const double slack_tol = tol * std::max(1.0, std::abs(upper[i]));
        if (load[i] < lower[i] - slack_tol || load[i] > upper[i] + slack_tol) {
            return false;
        }
    }
    return true;
}

LoadDomain LoadDomain::from_percent(const Network& net, double low_pct, double high_pct,
                                    const std::vector<int>& vary) {
    if (!(low_pct > 0.0) || low_pct > 100.0 || high_pct < 100.0) {
        throw ContractError("domain percentages must satisfy 0 < low <= 100 <= high");
    }
    const Eigen::VectorXd nominal = net.nominal_load();
    LoadDomain domain;
    domain.lower = nominal;
    domain.upper = nominal;
    std::vector<char> varies(static_cast<size_t>(nominal.size()), vary.empty() ? 1 : 0);
    for (int idx : vary) {
        if (idx < 0 || idx >= nominal.size()) {
            throw ContractError("varied load index out of range");
        }
        varies[static_cast<size_t>(idx)] = 1;
    }
    for (Eigen::Index i = 0; i < nominal.size(); ++i) {
        if (varies[static_cast<size_t>(i)]) {
            domain.lower[i] = nominal[i] * low_pct / 100.0;
            domain.upper[i] = nominal[i] * high_pct / 100.0;
        }
    }
    return domain;
}

bool RegionPolytope::contains(const Eigen::VectorXd& load, double tol) const {
    for (Eigen::Index row = 0; row < m.rows(); ++row) {
        if (m.row(row).dot(load) > k[row] + tol * std::max(1.0, std::abs(k[row]))) {
            return false;
        }
    }
    return true;
}

AffineLaw affine_law_from_active_set(const CanonicalForm& canon,
                                     const std::vector<int>& active_set) {
    const int n = canon.num_gens;
    if (static_cast<int>(active_set.size()) != n) {
        throw ContractError("active set must select exactly " + std::to_string(n) + " rows");
    }
    Eigen::MatrixXd a_act(n, n);
    Eigen::MatrixXd u_act(n, canon.num_loads);
    Eigen::VectorXd b_act(n);
    for (int i = 0; i < n; ++i) {
        const int row = active_set[static_cast<size_t>(i)];
        if (row < 0 || row >= canon.rows()) {
            throw ContractError("active-set row index out of range");
        }
        a_act.row(i) = canon.a.row(row);
        u_act.row(i) = canon.u.row(row);
        b_act[i] = canon.b[row];
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(a_act);
    if (!lu.isInvertible()) {
        throw DegeneracyError("active-set basis is singular");
    }
    AffineLaw law;
    law.jacobian = lu.solve(u_act);
    law.intercept = lu.solve(b_act);
    law.active_set = active_set;
    std::sort(law.active_set.begin(), law.active_set.end());
    return law;
}

std::optional<RegionPolytope> region_polytope(const CanonicalForm& canon, const AffineLaw& law,
                                              const LoadDomain& domain) {
    const polytope::BoxReduction box = polytope::reduce_box(domain.lower, domain.upper);
    const int n_d = canon.num_loads;

    struct CandidateRow {
        Eigen::VectorXd m;
        double k = 0.0;
    };
    std::vector<CandidateRow> candidates;

    std::vector<char> active(static_cast<size_t>(canon.rows()), 0);
    for (int row : law.active_set) {
        active[static_cast<size_t>(row)] = 1;
    }

    for (int j = 0; j < canon.rows(); ++j) {
        if (active[static_cast<size_t>(j)]) {
            continue;
        }
        CandidateRow row;
        row.m = (canon.a.row(j) * law.jacobian - canon.u.row(j)).transpose();
        row.k = canon.b[j] - canon.a.row(j).dot(law.intercept);

        // split the row into its free-dim part and the pinned contribution
        double pinned = 0.0;
        double free_norm = 0.0;
        double interval_max = 0.0;
        for (int dim = 0; dim < n_d; ++dim) {
            if (box.is_free(dim)) {
                free_norm = std::max(free_norm, std::abs(row.m[dim]));
                interval_max += std::max(row.m[dim] * domain.lower[dim],
                                         row.m[dim] * domain.upper[dim]);
            } else {
                pinned += row.m[dim] * domain.lower[dim];
            }
        }
        const double scale = std::max({1.0, std::abs(row.k), row.m.cwiseAbs().maxCoeff()});
        if (free_norm <= 1e-11 * scale) {
            if (row.k - pinned < -1e-9 * scale) {
                return std::nullopt;  // constant row violated everywhere
            }
            continue;  // vacuous
        }
        if (interval_max + pinned <= row.k - row_tolerance(row.k)) {
            continue;  // slack throughout the box
        }
        candidates.push_back(std::move(row));
    }

    // drop exact duplicates (two canonical rows can map to one halfspace)
    {
        std::vector<CandidateRow> unique_rows;
        for (const CandidateRow& row : candidates) {
            bool duplicate = false;
            for (const CandidateRow& kept : unique_rows) {
                if ((kept.m - row.m).cwiseAbs().maxCoeff() <= 1e-12 &&
                    std::abs(kept.k - row.k) <= 1e-12) {
                    duplicate = true;
                    break;
                }
            }
            if (!duplicate) {
                unique_rows.push_back(row);
            }
        }
        candidates = std::move(unique_rows);
    }

    const auto rows_of = [n_d](const std::vector<CandidateRow>& list) {
        polytope::Rows rows;
        rows.m.resize(static_cast<Eigen::Index>(list.size()), n_d);
        rows.k.resize(static_cast<Eigen::Index>(list.size()));
        for (size_t i = 0; i < list.size(); ++i) {
            rows.m.row(static_cast<Eigen::Index>(i)) = list[i].m.transpose();
            rows.k[static_cast<Eigen::Index>(i)] = list[i].k;
        }
        return rows;
    };

    // full-dimensional interior test (relative to the free subspace)
    const polytope::Center center = polytope::chebyshev_center(rows_of(candidates), box);
    const double interior_tol = 1e-7 * std::max(1.0, box.diagonal());
    if (!center.feasible || (box.reduced_dim() > 0 && center.radius <= interior_tol)) {
        return std::nullopt;
    }

    // row-by-row redundancy elimination against the remaining rows
    std::vector<CandidateRow> kept = candidates;
    for (size_t r = 0; r < kept.size();) {
        std::vector<CandidateRow> others;
        for (size_t i = 0; i < kept.size(); ++i) {
            if (i != r) {
                others.push_back(kept[i]);
            }
        }
        const polytope::LpPoint peak = polytope::maximize(rows_of(others), box, kept[r].m);
        if (peak.feasible && peak.value <= kept[r].k - row_tolerance(kept[r].k)) {
            kept.erase(kept.begin() + static_cast<std::ptrdiff_t>(r));
        } else {
            ++r;
        }
    }

    // box walls kept only where the region actually touches them
    struct BoxRow {
        Eigen::VectorXd m;
        double k = 0.0;
    };
    std::vector<BoxRow> box_rows;
    const polytope::Rows kept_rows = rows_of(kept);
    for (int dim = 0; dim < n_d; ++dim) {
        Eigen::VectorXd up = Eigen::VectorXd::Zero(n_d);
        up[dim] = 1.0;
        Eigen::VectorXd down = -up;
        if (!box.is_free(dim)) {
            box_rows.push_back({up, domain.upper[dim]});
            box_rows.push_back({down, -domain.lower[dim]});
            continue;
        }
        const double width = domain.upper[dim] - domain.lower[dim];
        Eigen::VectorXd widened_upper = domain.upper;
        widened_upper[dim] += width + 1.0;
        const polytope::LpPoint up_peak =
            polytope::maximize(kept_rows, box, up, nullptr, &widened_upper);
        if (!up_peak.feasible ||
            up_peak.value > domain.upper[dim] - row_tolerance(domain.upper[dim])) {
            box_rows.push_back({up, domain.upper[dim]});
        }
        Eigen::VectorXd widened_lower = domain.lower;
        widened_lower[dim] -= width + 1.0;
        const polytope::LpPoint down_peak =
            polytope::maximize(kept_rows, box, down, &widened_lower, nullptr);
        if (!down_peak.feasible ||
            down_peak.value > -domain.lower[dim] - row_tolerance(domain.lower[dim])) {
            box_rows.push_back({down, -domain.lower[dim]});
        }
    }

    RegionPolytope poly;
    const int total = static_cast<int>(kept.size() + box_rows.size());
    poly.m.resize(total, n_d);
    poly.k.resize(total);
    poly.from_box.assign(static_cast<size_t>(total), 0);
    int out_row = 0;
    for (const CandidateRow& row : kept) {
        poly.m.row(out_row) = row.m.transpose();
        poly.k[out_row] = row.k;
        ++out_row;
    }
    for (const BoxRow& row : box_rows) {
        poly.m.row(out_row) = row.m.transpose();
        poly.k[out_row] = row.k;
        poly.from_box[static_cast<size_t>(out_row)] = 1;
        ++out_row;
    }
    poly.chebyshev_center = center.point;
    poly.chebyshev_radius = center.radius;
    return poly;
}

namespace {

struct ExplorerContext {
    const EnrichedNetwork& net;
    const CanonicalForm& canon;
    const CostModel& cost;
    const LoadDomain& domain;
    const polytope::BoxReduction box;
    const ExploreOptions& opts;
    RegionTable& table;
    std::map<std::vector<int>, int> registry;  // active set -> region index (-1 = empty)
    std::deque<std::vector<int>> queue;
    double epsilon = 0.0;

    bool known(const std::vector<int>& active_set) const {
        return registry.find(active_set) != registry.end();
    }
};

/// Dual-feasibility certificate of an LP active set: the basis multipliers
/// solve A_act' lambda = -f and the inequality components are nonnegative.
bool dual_feasible(const CanonicalForm& canon, const CostModel& cost,
                   const std::vector<int>& active_set) {
    const int n = canon.num_gens;
    Eigen::MatrixXd a_act(n, n);
    for (int i = 0; i < n; ++i) {
        a_act.row(i) = canon.a.row(active_set[static_cast<size_t>(i)]);
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(a_act.transpose());
    if (!lu.isInvertible()) {
        return false;
    }
    const Eigen::VectorXd lambda = lu.solve(-cost.linear);
    const double tol = 1e-7 * (1.0 + cost.linear.cwiseAbs().maxCoeff());
    for (int i = 0; i < n; ++i) {
        const int row = active_set[static_cast<size_t>(i)];
        if (row != CanonicalForm::kBalancePlus && row != CanonicalForm::kBalanceMinus &&
            lambda[i] < -tol) {
            return false;
        }
    }
    return true;
}

void enqueue_from_solve(ExplorerContext& ctx, const Eigen::VectorXd& load) {
    const DispatchSolution sol = solve_dcopf(ctx.net.network, load, ctx.cost);
    if (sol.status != SolveStatus::Optimal) {
        return;  // feasibility boundary
    }
    std::vector<int> active_set = sol.basis;
    std::sort(active_set.begin(), active_set.end());
    if (!ctx.known(active_set)) {
        ctx.queue.push_back(std::move(active_set));
    }
}

void process_queue(ExplorerContext& ctx) {
    while (!ctx.queue.empty()) {
        const std::vector<int> active_set = std::move(ctx.queue.front());
        ctx.queue.pop_front();
        if (ctx.known(active_set)) {
            continue;
        }
        if (static_cast<int>(ctx.table.regions.size()) >= ctx.opts.max_regions) {
            throw NumericalError("region exploration exceeded the cap of " +
                                 std::to_string(ctx.opts.max_regions) +
                                 " regions; table is incomplete");
        }

        AffineLaw law;
        try {
            law = affine_law_from_active_set(ctx.canon, active_set);
        } catch (const DegeneracyError&) {
            ctx.registry.emplace(active_set, -1);
            notify(ctx.opts.notice, "skipped a degenerate active set");
            continue;
        }
        if (!dual_feasible(ctx.canon, ctx.cost, law.active_set)) {
            ctx.registry.emplace(active_set, -1);
            notify(ctx.opts.notice, "skipped a dual-infeasible active set");
            continue;
        }
        const auto poly = region_polytope(ctx.canon, law, ctx.domain);
        if (!poly) {
            ctx.registry.emplace(active_set, -1);
            continue;
        }

        // optimality certificate at the region's own center
        {
            const DispatchSolution probe =
                solve_dcopf(ctx.net.network, poly->chebyshev_center, ctx.cost);
            if (probe.status != SolveStatus::Optimal) {
                throw NumericalError("region center unexpectedly infeasible");
            }
            const double law_cost = ctx.cost.linear.dot(law.dispatch(poly->chebyshev_center));
            if (std::abs(law_cost - probe.objective) >
                1e-6 * (1.0 + std::abs(probe.objective))) {
                throw NumericalError("region law disagrees with the solver at its center");
            }
        }

        Region region;
        region.law = law;
        region.polytope = *poly;
        region.lmce = region_lmce(law.jacobian, ctx.table.intensities);
        region.lmp = region_lmp(law.jacobian, ctx.table.cost_linear);
        const int index = static_cast<int>(ctx.table.regions.size());
        ctx.table.regions.push_back(std::move(region));
        ctx.registry.emplace(active_set, index);

        // cross each constraint facet by an epsilon step beyond its hyperplane
        const RegionPolytope& stored = ctx.table.regions.back().polytope;
        polytope::Rows rows;
        rows.m = stored.m;
        rows.k = stored.k;
        for (Eigen::Index r = 0; r < stored.m.rows(); ++r) {
            if (stored.from_box[static_cast<size_t>(r)]) {
                continue;  // box walls end the parameter domain
            }
            const polytope::Center facet =
                polytope::facet_center(rows, ctx.box, static_cast<int>(r));
            if (!facet.feasible || facet.radius <= 1e-9 * std::max(1.0, ctx.box.diagonal())) {
                continue;  // lower-dimensional ridge
            }
            Eigen::VectorXd direction = stored.m.row(r).transpose();
            for (int dim = 0; dim < ctx.canon.num_loads; ++dim) {
                if (!ctx.box.is_free(dim)) {
                    direction[dim] = 0.0;
                }
            }
            const double norm = direction.norm();
            if (norm < 1e-12) {
                continue;
            }
            const Eigen::VectorXd probe = facet.point + (ctx.epsilon / norm) * direction;
            if (!ctx.domain.contains(probe, 0.0)) {
                continue;  // crossing leaves the domain box
            }
            enqueue_from_solve(ctx, probe);
        }
    }
}

} // namespace

RegionTable explore_regions(const EnrichedNetwork& net, const CostModel& cost,
                            const LoadDomain& domain, const Eigen::VectorXd& seed_load,
                            const ExploreOptions& opts) {
    if (cost.kind != CostModel::Kind::Linear) {
        throw UnsupportedError(
            "region exploration supports linear cost models only; quadratic objectives are not "
            "supported");
    }
    cost.validate(net.network.num_generators());
    if (domain.dim() != net.network.num_loads()) {
        throw ContractError("domain dimension does not match the load-bus count");
    }
    if (!domain.contains(seed_load)) {
        throw ContractError("seed load lies outside the domain box");
    }

    const CanonicalForm canon = build_canonical(net);
    RegionTable table;
    table.fingerprint = case_fingerprint(net);
    table.num_gens = canon.num_gens;
    table.num_loads = canon.num_loads;
    table.domain = domain;
    table.intensities = net.network.intensity_vector();
    table.cost_linear = cost.linear;
    for (int bus : net.network.load_buses()) {
        table.load_bus_ids.push_back(net.network.buses[bus].id);
    }
    table.total_p_max = 0.0;
    table.total_p_min = 0.0;
    for (const Generator& gen : net.network.generators) {
        table.total_p_max += gen.p_max;
        table.total_p_min += gen.p_min;
    }

    ExplorerContext ctx{net,
                        canon,
                        cost,
                        domain,
                        polytope::reduce_box(domain.lower, domain.upper),
                        opts,
                        table,
                        {},
                        {},
                        0.0};
    ctx.epsilon = 1e-4 * std::max(ctx.box.diagonal(), 1e-6);

    // seed solve; jitter away from degenerate optima
    std::mt19937 rng(opts.rng_seed);
    Eigen::VectorXd seed = seed_load;
    for (int attempt = 0; attempt < 10; ++attempt) {
        const DispatchSolution sol = solve_dcopf(net.network, seed, cost);
        if (sol.status != SolveStatus::Optimal) {
            throw ContractError("seed load has no feasible dispatch: " + sol.diagnostic);
        }
        if (!sol.primal_degenerate && !sol.dual_degenerate) {
            break;
        }
        notify(opts.notice, "seed solve is degenerate; jittering the seed");
        std::uniform_real_distribution<double> jitter(-1e-3, 1e-3);
        seed = seed_load;
        for (int dim : ctx.box.free_dims) {
            const double width = domain.upper[dim] - domain.lower[dim];
            seed[dim] = std::clamp(seed[dim] + jitter(rng) * width, domain.lower[dim],
                                   domain.upper[dim]);
        }
    }
    enqueue_from_solve(ctx, seed);
    process_queue(ctx);

    // sampling pass to repair coverage gaps the facet walk may have missed
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int round = 0; round < opts.max_repair_rounds; ++round) {
        int repaired = 0;
        for (int s = 0; s < opts.coverage_samples; ++s) {
            Eigen::VectorXd sample = domain.lower;
            for (int dim : ctx.box.free_dims) {
                sample[dim] =
                    domain.lower[dim] + unit(rng) * (domain.upper[dim] - domain.lower[dim]);
            }
            bool covered = false;
            for (const Region& region : table.regions) {
                if (region.polytope.contains(sample)) {
                    covered = true;
                    break;
                }
            }
            if (covered) {
                continue;
            }
            const size_t before = table.regions.size();
            enqueue_from_solve(ctx, sample);
            process_queue(ctx);
            if (table.regions.size() > before) {
                ++repaired;
            }
        }
        if (repaired == 0) {
            break;
        }
        notify(opts.notice,
               "coverage repair round added " + std::to_string(repaired) + " region(s)");
    }

    if (table.regions.empty()) {
        throw NumericalError("exploration produced no full-dimensional regions");
    }
    return table;
}

LocateResult locate_region(const RegionTable& table, const Eigen::VectorXd& load) {
    LocateResult result;
    if (load.size() != table.num_loads) {
        throw ContractError("query load has dimension " + std::to_string(load.size()) +
                            ", expected " + std::to_string(table.num_loads));
    }
    for (size_t k = 0; k < table.regions.size(); ++k) {
        if (table.regions[k].polytope.contains(load)) {
            result.status = LocateStatus::Found;
            result.region = static_cast<int>(k);
            return result;
        }
    }
    const double total = load.sum();
    if (total > table.total_p_max + 1e-9 * (1.0 + table.total_p_max)) {
        result.status = LocateStatus::Infeasible;
        std::ostringstream msg;
        msg << "capacity deficit: total load " << total << " MW exceeds total capacity "
            << table.total_p_max << " MW";
        result.diagnostic = msg.str();
        return result;
    }
    if (total < table.total_p_min - 1e-9 * (1.0 + std::abs(table.total_p_min))) {
        result.status = LocateStatus::Infeasible;
        result.diagnostic = "total load below the aggregate minimum generation";
        return result;
    }
    result.status = LocateStatus::Uncovered;
    result.diagnostic = table.domain.contains(load)
                            ? "no region contains the load (flow-infeasible or a coverage gap)"
                            : "load lies outside the table domain";
    return result;
}

namespace {

const Region& locate_or_throw(const RegionTable& table, const Eigen::VectorXd& load) {
    const LocateResult result = locate_region(table, load);
    if (result.status == LocateStatus::Infeasible) {
        throw InfeasibleError(result.diagnostic);
    }
    if (result.status == LocateStatus::Uncovered) {
        throw CoverageError(result.diagnostic);
    }
    return table.regions[static_cast<size_t>(result.region)];
}

} // namespace

Eigen::VectorXd query_lmce(const RegionTable& table, const Eigen::VectorXd& load) {
    return locate_or_throw(table, load).lmce;
}

Eigen::VectorXd query_lmp(const RegionTable& table, const Eigen::VectorXd& load) {
    return locate_or_throw(table, load).lmp;
}

int region_from_lmp(const RegionTable& table, const Eigen::VectorXd& lmp, double tol) {
    if (lmp.size() != table.num_loads) {
        throw ContractError("price vector has the wrong dimension");
    }
    const double scale = table.cost_linear.size() > 0 && table.cost_linear.cwiseAbs().maxCoeff() > 1.0
                             ? table.cost_linear.cwiseAbs().maxCoeff()
                             : 1.0;
    const double match_tol = tol >= 0.0 ? tol : 1e-6 * scale;
    std::vector<int> matches;
    for (size_t k = 0; k < table.regions.size(); ++k) {
        if ((table.regions[k].lmp - lmp).cwiseAbs().maxCoeff() <= match_tol) {
            matches.push_back(static_cast<int>(k));
        }
    }
    if (matches.empty()) {
        throw AmbiguityError("no stored region matches the posted price vector");
    }
    if (matches.size() > 1) {
        std::ostringstream msg;
        msg << "price vector matches " << matches.size() << " regions {";
        for (size_t i = 0; i < matches.size(); ++i) {
            msg << (i ? ", " : "") << matches[i];
        }
        msg << "}";
        throw AmbiguityError(msg.str());
    }
    return matches.front();
}

// --- persistence -----------------------------------------------------------
//
// Little-endian layout:
//   u32 magic 'CGRT', u32 schema version,
//   u64 case fingerprint, i32 num_gens, i32 num_loads, i32 region count,
//   domain lower/upper, load bus ids, intensities, cost vector,
//   f64 total_p_max, f64 total_p_min,
//   per region: active set, J, g, row count, M, k, from_box bytes,
//               chebyshev center + radius, lmce, lmp,
//   u64 FNV-1a checksum of everything before the trailer.

namespace {

constexpr std::uint32_t kTableMagic = 0x43475254;  // "TRGC" when read as bytes
constexpr std::uint32_t kTableVersion = 1;

struct ByteWriter {
    std::vector<std::uint8_t> bytes;

    void raw(const void* data, size_t size) {
        const auto* p = static_cast<const std::uint8_t*>(data);
        bytes.insert(bytes.end(), p, p + size);
    }
    void u32(std::uint32_t v) { raw(&v, sizeof v); }
    void u64(std::uint64_t v) { raw(&v, sizeof v); }
    void i32(std::int32_t v) { raw(&v, sizeof v); }
    void f64(double v) { raw(&v, sizeof v); }
    void vec(const Eigen::VectorXd& v) {
        i32(static_cast<std::int32_t>(v.size()));
        raw(v.data(), sizeof(double) * static_cast<size_t>(v.size()));
    }
    void mat(const Eigen::MatrixXd& m) {
        i32(static_cast<std::int32_t>(m.rows()));
        i32(static_cast<std::int32_t>(m.cols()));
        for (Eigen::Index r = 0; r < m.rows(); ++r) {
            for (Eigen::Index c = 0; c < m.cols(); ++c) {
                f64(m(r, c));
            }
        }
    }
};

struct ByteReader {
    const std::vector<std::uint8_t>& bytes;
    size_t pos = 0;

    void raw(void* out, size_t size) {
        if (pos + size > bytes.size()) {
            throw ChecksumError("region table file is truncated");
        }
        std::memcpy(out, bytes.data() + pos, size);
        pos += size;
    }
    std::uint32_t u32() {
        std::uint32_t v;
        raw(&v, sizeof v);
        return v;
    }
    std::uint64_t u64() {
        std::uint64_t v;
        raw(&v, sizeof v);
        return v;
    }
    std::int32_t i32() {
        std::int32_t v;
        raw(&v, sizeof v);
        return v;
    }
    double f64() {
        double v;
        raw(&v, sizeof v);
        return v;
    }
    Eigen::VectorXd vec() {
        const std::int32_t n = i32();
        if (n < 0 || static_cast<size_t>(n) > (bytes.size() - pos) / sizeof(double)) {
            throw ChecksumError("region table file is truncated");
        }
        Eigen::VectorXd v(n);
        raw(v.data(), sizeof(double) * static_cast<size_t>(n));
        return v;
    }
    Eigen::MatrixXd mat() {
        const std::int32_t rows = i32();
        const std::int32_t cols = i32();
        if (rows < 0 || cols < 0 ||
            static_cast<size_t>(rows) * static_cast<size_t>(cols) >
                (bytes.size() - pos) / sizeof(double)) {
            throw ChecksumError("region table file is truncated");
        }
        Eigen::MatrixXd m(rows, cols);
        for (Eigen::Index r = 0; r < rows; ++r) {
            for (Eigen::Index c = 0; c < cols; ++c) {
                m(r, c) = f64();
            }
        }
        return m;
    }
};

std::uint64_t fnv1a(const std::uint8_t* data, size_t size) {
    std::uint64_t hash = 1469598103934665603ULL;
    for (size_t i = 0; i < size; ++i) {
        hash ^= data[i];
        hash *= 1099511628211ULL;
    }
    return hash;
}

} // namespace

void save_table(const RegionTable& table, const std::filesystem::path& path) {
    ByteWriter w;
    w.u32(kTableMagic);
    w.u32(kTableVersion);
    w.u64(table.fingerprint);
    w.i32(table.num_gens);
    w.i32(table.num_loads);
    w.i32(static_cast<std::int32_t>(table.regions.size()));
    w.vec(table.domain.lower);
    w.vec(table.domain.upper);
    w.i32(static_cast<std::int32_t>(table.load_bus_ids.size()));
    for (int id : table.load_bus_ids) {
        w.i32(id);
    }
    w.vec(table.intensities);
    w.vec(table.cost_linear);
    w.f64(table.total_p_max);
    w.f64(table.total_p_min);
    for (const Region& region : table.regions) {
        w.i32(static_cast<std::int32_t>(region.law.active_set.size()));
        for (int row : region.law.active_set) {
            w.i32(row);
        }
        w.mat(region.law.jacobian);
        w.vec(region.law.intercept);
        w.mat(region.polytope.m);
        w.vec(region.polytope.k);
        for (char flag : region.polytope.from_box) {
            w.raw(&flag, 1);
        }
        w.vec(region.polytope.chebyshev_center);
        w.f64(region.polytope.chebyshev_radius);
        w.vec(region.lmce);
        w.vec(region.lmp);
    }
    const std::uint64_t checksum = fnv1a(w.bytes.data(), w.bytes.size());
    w.u64(checksum);

    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot write region table: " + path.string());
    }
    out.write(reinterpret_cast<const char*>(w.bytes.data()),
              static_cast<std::streamsize>(w.bytes.size()));
    if (!out) {
        throw IoError("write failed: " + path.string());
    }
}

RegionTable load_table(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open region table: " + path.string());
    }
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                    std::istreambuf_iterator<char>());
    if (bytes.size() < sizeof(std::uint64_t) + 2 * sizeof(std::uint32_t)) {
        throw ChecksumError("region table file is truncated");
    }
    const size_t payload = bytes.size() - sizeof(std::uint64_t);
    std::uint64_t stored_checksum;
    std::memcpy(&stored_checksum, bytes.data() + payload, sizeof stored_checksum);
    if (fnv1a(bytes.data(), payload) != stored_checksum) {
        throw ChecksumError("region table checksum mismatch");
    }

    ByteReader r{bytes};
    if (r.u32() != kTableMagic) {
        throw IoError("not a region table file");
    }
    if (const std::uint32_t version = r.u32(); version != kTableVersion) {
        throw IoError("region table schema version " + std::to_string(version) +
                      " is not supported");
    }
    RegionTable table;
    table.fingerprint = r.u64();
    table.num_gens = r.i32();
    table.num_loads = r.i32();
    const std::int32_t region_count = r.i32();
    table.domain.lower = r.vec();
    table.domain.upper = r.vec();
    const std::int32_t id_count = r.i32();
    for (std::int32_t i = 0; i < id_count; ++i) {
        table.load_bus_ids.push_back(r.i32());
    }
    table.intensities = r.vec();
    table.cost_linear = r.vec();
    table.total_p_max = r.f64();
    table.total_p_min = r.f64();
    for (std::int32_t k = 0; k < region_count; ++k) {
        Region region;
        const std::int32_t active_count = r.i32();
        for (std::int32_t i = 0; i < active_count; ++i) {
            region.law.active_set.push_back(r.i32());
        }
        region.law.jacobian = r.mat();
        region.law.intercept = r.vec();
        region.polytope.m = r.mat();
        region.polytope.k = r.vec();
        region.polytope.from_box.resize(static_cast<size_t>(region.polytope.m.rows()));
        for (char& flag : region.polytope.from_box) {
            r.raw(&flag, 1);
        }
        region.polytope.chebyshev_center = r.vec();
        region.polytope.chebyshev_radius = r.f64();
        region.lmce = r.vec();
        region.lmp = r.vec();
        table.regions.push_back(std::move(region));
    }
    return table;
}

RegionTable load_table(const std::filesystem::path& path, const EnrichedNetwork& net) {
    RegionTable table = load_table(path);
    const std::uint64_t expected = case_fingerprint(net);
    if (table.fingerprint != expected) {
        throw StaleTableError("region table was built for a different case (fingerprint 0x" +
                              [](std::uint64_t v) {
                                  std::ostringstream s;
                                  s << std::hex << v;
                                  return s.str();
                              }(table.fingerprint) +
                              ")");
    }
    return table;
}

} // namespace carbongrid
