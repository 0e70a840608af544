#pragma once

// Batch verification over all feasible (d, n): construct random nodal
// configurations and check tangent dimension, adjoint rank and fiber size.

#include <string>
#include <vector>

#include "severi/incidence.hpp"
#include "severi/io.hpp"
#include "severi/linsys.hpp"

namespace severi {

struct SweepInstance {
    int d = 0;
    int n = 0;
    int index = 0;
    std::uint64_t seed = 0;
    bool constructed = false;
    std::string failure;  // construction failure message
    int attempts = 0;
    TangentDimension tangent;
    AdjointRank adjoint;
    long fiber = 0;
    bool pass() const {
        return constructed && tangent.pass() && tangent.rank == 3 * n && (d < 3 || adjoint.pass()) &&
               fiber == factorial(n);
    }
};

struct SweepRow {
    int d = 0;
    int n = 0;
    int constructed = 0;
    int failures = 0;
    int passed = 0;
    std::vector<SweepInstance> instances;
    bool pass() const { return passed == constructed; }
};

struct SweepReport {
    int d_max = 0;
    std::uint64_t seed = 0;
    Mode mode = Mode::exact;
    std::vector<SweepRow> rows;
    bool pass() const {
        return std::all_of(rows.begin(), rows.end(), [](const SweepRow& r) { return r.pass(); });
    }
};

struct SweepOptions {
    int instances = 3;     // target number of constructed configurations per (d, n)
    int max_tries = 6;     // point sets tried per (d, n)
    Mode mode = Mode::exact;
    Tolerances tol{};
};

/// n is feasible for degree d when n <= genus and 3n <= L_d + 1.
inline std::vector<int> feasible_node_counts(int d) {
    std::vector<int> out;
    for (long n = 0; n <= arithmetic_genus(d) && 3 * n <= l_d(d) + 1; ++n) out.push_back(static_cast<int>(n));
    return out;
}

/// Nine general points carry no irreducible 9-nodal sextic, so (6, 9) uses
/// a random projective image of the Halphen points.
inline std::vector<ExactPoint> sweep_points(int d, int n, Rng& rng) {
    if (d == 6 && n == 9) return random_projective_image(halphen_points(), rng);
    return random_points(n, rng);
}

inline SweepInstance run_sweep_instance(int d, int n, int index, std::uint64_t seed, const SweepOptions& opt) {
    SweepInstance in{d, n, index, seed};
    Rng rng(seed);
    const auto pts = sweep_points(d, n, rng);
    ConstructionOptions co;
    co.require_irreducible = true;
    co.tol = opt.tol;
    std::optional<ExactConfiguration> built;
    try {
        built = construct_nodal_curve(pts, d, seed, co);
    } catch (const Error& e) {
        in.failure = e.what();
        return in;
    }
    const ExactConfiguration& cfg = *built;
    in.constructed = true;
    in.attempts = cfg.attempts;
    in.tangent = opt.mode == Mode::exact ? tangent_dimension(cfg, opt.tol) : tangent_dimension(cfg.to_float(), opt.tol);
    in.adjoint = adjoint_condition_rank(cfg);
    for_each_ordering<QComplex>(cfg, [&](const ExactConfiguration&) {
        ++in.fiber;
        return true;
    });
    return in;
}

inline SweepReport sweep(int d_max, std::uint64_t seed, const SweepOptions& opt = {}) {
    if (d_max < 1) throw Error("d_max must be at least 1");
    if (d_max > opt.tol.degree_cap)
        throw Error("degree cap exceeded: " + std::to_string(d_max) + " > " + std::to_string(opt.tol.degree_cap));
    SweepReport rep{d_max, seed, opt.mode};
    for (int d = 1; d <= d_max; ++d)
        for (int n : feasible_node_counts(d)) {
            SweepRow row{d, n};
            for (int k = 0; k < opt.max_tries && row.constructed < opt.instances; ++k) {
                auto in = run_sweep_instance(d, n, k, derive_seed(seed, d, n, k), opt);
                if (in.constructed) {
                    ++row.constructed;
                    row.passed += in.pass() ? 1 : 0;
                } else {
                    ++row.failures;
                }
                row.instances.push_back(std::move(in));
            }
            rep.rows.push_back(std::move(row));
        }
    return rep;
}

inline json to_json(const SweepInstance& in) {
    json j{{"index", in.index}, {"seed", in.seed}, {"constructed", in.constructed}};
    if (!in.constructed) {
        j["failure"] = in.failure;
        return j;
    }
    j["attempts"] = in.attempts;
    j["rank"] = in.tangent.rank;
    j["tangent_dim"] = in.tangent.dimension;
    j["expected"] = in.tangent.expected;
    j["adjoint_rank"] = in.adjoint.rank;
    j["fiber_cardinality"] = in.fiber;
    j["pass"] = in.pass();
    return j;
}

inline json to_json(const SweepReport& r) {
    json rows = json::array();
    int constructed = 0, passed = 0, failures = 0;
    for (const auto& row : r.rows) {
        json inst = json::array();
        for (const auto& in : row.instances) inst.push_back(to_json(in));
        rows.push_back(json{{"d", row.d},
                            {"n", row.n},
                            {"L_d", l_d(row.d)},
                            {"constructed", row.constructed},
                            {"genericity_failures", row.failures},
                            {"passed", row.passed},
                            {"pass", row.pass()},
                            {"instances", inst}});
        constructed += row.constructed;
        passed += row.passed;
        failures += row.failures;
    }
    return json{{"d_max", r.d_max},
                {"seed", r.seed},
                {"mode", to_string(r.mode)},
                {"rows", rows},
                {"summary", json{{"constructed", constructed}, {"passed", passed}, {"genericity_failures", failures}}},
                {"pass", r.pass()}};
}

}  // namespace severi
