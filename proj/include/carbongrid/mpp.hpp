#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "carbongrid/dcopf.hpp"
#include "carbongrid/polytope.hpp"

namespace carbongrid {

/// Axis-aligned load box; dimensions with lower == upper are pinned at their
/// nominal value and do not participate in the parameter space.
struct LoadDomain {
    Eigen::VectorXd lower;
    Eigen::VectorXd upper;

    bool contains(const Eigen::VectorXd& load, double tol = 1e-9) const;
    int dim() const { return static_cast<int>(lower.size()); }

    /// Box spanning [low_pct, high_pct]% of the nominal load on the selected
    /// load indices (all of them when `vary` is empty); the rest stay pinned.
    static LoadDomain from_percent(const Network& net, double low_pct, double high_pct,
                                   const std::vector<int>& vary = {});
};

/// Affine dispatch law P_gen = J load + g of one active set.
struct AffineLaw {
    Eigen::MatrixXd jacobian;
    Eigen::VectorXd intercept;
    std::vector<int> active_set;  // canonical rows, sorted

    Eigen::VectorXd dispatch(const Eigen::VectorXd& load) const {
        return jacobian * load + intercept;
    }
};

/// Irredundant halfspace description of one critical region clipped to the
/// domain box. Box walls and pinned-dimension rows are stored like any other
/// row and flagged via `from_box`.
struct RegionPolytope {
    Eigen::MatrixXd m;
    Eigen::VectorXd k;
    std::vector<char> from_box;
    Eigen::VectorXd chebyshev_center;
    double chebyshev_radius = 0.0;

    bool contains(const Eigen::VectorXd& load, double tol = 1e-9) const;
};

struct Region {
    AffineLaw law;
    RegionPolytope polytope;
    Eigen::VectorXd lmce;  // intensities' J
    Eigen::VectorXd lmp;   // f' J
};

struct RegionTable {
    std::uint64_t fingerprint = 0;
    int num_gens = 0;
    int num_loads = 0;
    LoadDomain domain;
    Eigen::VectorXd intensities;
    Eigen::VectorXd cost_linear;
    std::vector<int> load_bus_ids;  // external bus numbers, P^D order
    double total_p_max = 0.0;
    double total_p_min = 0.0;
    std::vector<Region> regions;
};

/// J_k = A_act^-1 U_act, g_k = A_act^-1 b_act of an N_G-row active set.
AffineLaw affine_law_from_active_set(const CanonicalForm& canon,
                                     const std::vector<int>& active_set);

/// Halfspace rows (A_j J - U_j) load <= b_j - A_j g over the inactive rows,
/// clipped by the box and pruned row-by-row. Empty (no interior within the
/// domain) yields nullopt.
std::optional<RegionPolytope> region_polytope(const CanonicalForm& canon, const AffineLaw& law,
                                              const LoadDomain& domain);

struct ExploreOptions {
    int max_regions = 4096;
    int coverage_samples = 512;
    int max_repair_rounds = 20;
    unsigned rng_seed = 0xC02;
    NoticeSink notice;
};

/// Breadth-first facet exploration seeded at `seed_load`: cross every
/// unexplored facet by an epsilon step beyond its hyperplane, re-solve, and
/// deduplicate regions by active-set identity. A sampling pass afterwards
/// repairs any coverage gaps the facet walk missed. Linear costs only.
RegionTable explore_regions(const EnrichedNetwork& net, const CostModel& cost,
                            const LoadDomain& domain, const Eigen::VectorXd& seed_load,
                            const ExploreOptions& opts = {});

enum class LocateStatus { Found, Infeasible, Uncovered };

struct LocateResult {
    LocateStatus status = LocateStatus::Uncovered;
    int region = -1;
    std::string diagnostic;
};

/// Sequential scan with short-circuit row rejection; ties on shared facets
/// resolve to the smallest region index. No optimization runs on this path.
LocateResult locate_region(const RegionTable& table, const Eigen::VectorXd& load);

/// Precomputed per-region vectors for a located load; throws InfeasibleError
/// or CoverageError when no region contains it.
Eigen::VectorXd query_lmce(const RegionTable& table, const Eigen::VectorXd& load);
Eigen::VectorXd query_lmp(const RegionTable& table, const Eigen::VectorXd& load);

/// Inverts the price map: the region whose stored lmp matches `lmp` within
/// `tol` (default 1e-6 * max(1, |f|_inf)). No match or several matches throw
/// AmbiguityError.
int region_from_lmp(const RegionTable& table, const Eigen::VectorXd& lmp, double tol = -1.0);

/// Versioned little-endian binary round trip with a trailing checksum.
void save_table(const RegionTable& table, const std::filesystem::path& path);
RegionTable load_table(const std::filesystem::path& path);
RegionTable load_table(const std::filesystem::path& path, const EnrichedNetwork& net);

} // namespace carbongrid
