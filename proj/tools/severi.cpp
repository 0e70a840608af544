#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>

#include "severi/corpus.hpp"
#include "severi/sweep.hpp"

using namespace severi;

namespace {

struct Options {
    std::uint64_t seed = 1;
    std::string mode_flag;
    Mode mode = Mode::exact;
    Tolerances tol{};
    std::string out;
    std::optional<int> d, n;
    double delta = 1e-6;
    int trials = 100;
    bool irreducible = false;
    std::vector<std::string> files;
    std::string points;
};

// Exit codes.
constexpr int kPass = 0;
constexpr int kInputError = 1;
constexpr int kFailure = 2;

Mode resolve_mode(const std::string& flag) {
    std::string v = flag;
    if (v.empty())
        if (const char* env = std::getenv("SEVERI_MODE")) v = env;
    if (v.empty() || v == "exact") return Mode::exact;
    if (v == "float") return Mode::floating;
    throw InputError("mode must be exact or float, got '" + v + "'");
}

class Runner {
public:
    explicit Runner(Options o) : o_(std::move(o)) {}

    int emit(json report, const std::string& summary) {
        const bool pass = !report.contains("pass") || report["pass"].get<bool>();
        const std::string text = report.dump(2) + "\n";
        if (!o_.out.empty()) {
            write_text_file(o_.out, text);
            std::cout << summary << "\n";
        } else {
            std::cout << text;
            std::cerr << summary << "\n";
        }
        return pass ? kPass : kFailure;
    }

    int failure(const std::string& command, const std::string& message) {
        return emit(json{{"command", command}, {"pass", false}, {"error", message}}, command + ": " + message);
    }

    const Options& options() const { return o_; }

    int construct() {
        if (!o_.d) throw InputError("construct needs --d");
        std::vector<ExactPoint> pts;
        if (!o_.points.empty()) {
            pts = points_from_json(read_json_file(o_.points), o_.points);
        } else {
            if (!o_.n) throw InputError("construct needs a points file or --n");
            if (*o_.d < 1) throw InputError("--d must be at least 1");
            Rng rng(o_.seed);
            pts = *o_.n == 9 && *o_.d == 6 ? sweep_points(6, 9, rng) : random_points(*o_.n, rng);
        }
        if (*o_.d < 1) throw InputError("--d must be at least 1");
        if (static_cast<long>(pts.size()) > arithmetic_genus(*o_.d))
            throw InputError("node count exceeds genus bound: " + std::to_string(pts.size()) + " > " +
                             std::to_string(arithmetic_genus(*o_.d)));
        ConstructionOptions co;
        co.tol = o_.tol;
        co.require_irreducible = o_.irreducible;
        auto cfg = construct_nodal_curve(pts, *o_.d, o_.seed, co);
        json v = verification_to_json(cfg);
        json r{{"command", "construct"}, {"curve", curve_to_json(cfg.curve)}, {"points", points_to_json(pts)}};
        r["verification"] = v;
        r["irreducible"] = cfg.irreducible ? json(*cfg.irreducible) : json("unchecked");
        r["pass"] = v["adjoint_pass"].get<bool>() || *o_.d < 3;
        return emit(r, "constructed a degree-" + std::to_string(*o_.d) + " curve with " + std::to_string(pts.size()) +
                           " nodes after " + std::to_string(cfg.attempts) + " attempt(s)");
    }

    int nodes() {
        const auto c = curve(0);
        json r{{"command", "nodes"}, {"mode", to_string(o_.mode)}, {"degree", c.degree()}};
        int count = 0, node_count = 0;
        if (o_.mode == Mode::exact) {
            auto m = membership(c, o_.tol);
            r["membership"] = to_json(m);
            r["singular_points"] = r["membership"]["singular_points"];
            r["membership"].erase("singular_points");
            const int n = m.node_count;
            r["in_nodal_locus"] = m.in_nodal_locus(n);
            count = m.singular_count;
            node_count = n;
        } else {
            json pts = json::array();
            for (const auto& s : singular_points(c.to_float(), o_.tol)) {
                pts.push_back(to_json(s));
                ++count;
                node_count += s.is_node() ? 1 : 0;
            }
            r["singular_points"] = pts;
        }
        return emit(r, std::to_string(count) + " singular point(s), " + std::to_string(node_count) + " node(s)");
    }

    int genus() {
        if (!o_.d) throw InputError("genus needs --d");
        if (*o_.d < 1) throw InputError("--d must be at least 1");
        if (o_.n && *o_.n > arithmetic_genus(*o_.d))
            throw InputError("node count exceeds genus bound: " + std::to_string(*o_.n) + " > " +
                             std::to_string(arithmetic_genus(*o_.d)));
        const long pa = arithmetic_genus(*o_.d);
        json r{{"command", "genus"}, {"d", *o_.d}, {"arithmetic_genus", pa}};
        std::string summary = "p_a = " + std::to_string(pa);
        if (o_.n) {
            const long g = geometric_genus(*o_.d, *o_.n);
            r["n"] = *o_.n;
            r["geometric_genus"] = g;
            summary = "g = " + std::to_string(g);
        }
        return emit(r, summary);
    }

    int verify_dimension() {
        const auto c = curve(0);
        TangentDimension t;
        if (o_.mode == Mode::exact)
            t = tangent_dimension(configuration_from_curve(c, o_.tol), o_.tol);
        else
            t = tangent_dimension(configuration_from_curve(c.to_float(), o_.tol), o_.tol);
        json r = to_json(t);
        r["command"] = "verify-dimension";
        return emit(r, "tangent_dim " + std::to_string(t.dimension) + ", expected " + std::to_string(t.expected));
    }

    int perturb() {
        if (o_.files.size() != 2) throw InputError("perturb needs two curve files");
        const auto a = curve(0), b = curve(1);
        StabilityReport rep = o_.mode == Mode::exact
                                  ? intersection_stability_experiment(a, b, o_.trials, o_.delta, o_.seed)
                                  : intersection_stability_experiment(a.to_float(), b.to_float(), o_.trials, o_.delta, o_.seed);
        json r = to_json(rep);
        r["command"] = "perturb";
        r["delta"] = o_.delta;
        r["seed"] = o_.seed;
        r["mode"] = to_string(o_.mode);
        r["pass"] = rep.failures == 0;
        return emit(r, std::string(StabilityReport::label) + ": max displacement " + std::to_string(rep.max) +
                           " over " + std::to_string(rep.trials.size()) + " trial(s), " + std::to_string(rep.failures) +
                           " failure(s)");
    }

    int distance() {
        if (o_.files.size() != 2) throw InputError("distance needs two curve files");
        const auto a = curve(0), b = curve(1);
        if (a.degree() != b.degree())
            throw InputError("degree mismatch: " + std::to_string(a.degree()) + " vs " + std::to_string(b.degree()));
        const double dist = curve_distance(a, b);
        return emit(json{{"command", "distance"}, {"distance", dist}}, "distance " + std::to_string(dist));
    }

    int bezout() {
        if (o_.files.size() != 2) throw InputError("bezout needs two curve files");
        const auto a = curve(0), b = curve(1);
        BezoutResult res = o_.mode == Mode::exact ? bezout_count(a, b) : bezout_count(a.to_float(), b.to_float());
        json r = to_json(res);
        r["command"] = "bezout";
        r["mode"] = to_string(o_.mode);
        return emit(r, "total " + std::to_string(res.total) + ", expected " + std::to_string(res.expected));
    }

    int report() {
        need_files(1);
        const json doc = read_json_file(o_.files[0]);
        const ExactCurve c = curve_from_json(doc, o_.files[0]);
        const auto m = membership(c, o_.tol);
        const auto seen = observe(c, m);
        json r{{"command", "report"}, {"degree", c.degree()}, {"membership", to_json(m)}, {"observed", to_json(seen)}};
        if (doc.contains("name")) r["name"] = doc["name"];
        bool pass = true;
        if (c.degree() >= 1) r["arithmetic_genus"] = arithmetic_genus(c.degree());
        const bool applicable = seen.nodal && seen.irreducible && c.degree() >= 1 &&
                                m.node_count <= arithmetic_genus(c.degree());
        if (!applicable) r["tangent_dimension"] = "not applicable: not an irreducible nodal curve within the genus bound";
        if (applicable) {
            try {
                auto cfg = configuration_from_curve(c, o_.tol);
                json t = to_json(tangent_dimension(cfg, o_.tol));
                r["tangent_dimension"] = t;
                pass = pass && t["pass"].get<bool>();
                if (c.degree() >= 3) {
                    auto adj = adjoint_condition_rank(cfg);
                    r["adjoint_rank"] = json{{"rank", adj.rank}, {"expected", adj.expected}, {"pass", adj.pass()}};
                    pass = pass && adj.pass();
                }
            } catch (const Error& e) {
                r["tangent_dimension"] = json{{"error", e.what()}};
            }
        }
        if (doc.contains("expected")) {
            const auto expected = expected_from_json(doc["expected"], o_.files[0] + "/expected");
            const auto diff = mismatches(expected, seen);
            r["expected"] = to_json(expected);
            r["mismatches"] = diff;
            pass = pass && diff.empty();
        }
        r["pass"] = pass;
        return emit(r, std::string(pass ? "pass" : "FAIL") + ": " + std::to_string(m.node_count) + " node(s), " +
                           std::to_string(m.singular_count) + " singular point(s)");
    }

    int sweep_command() {
        SweepOptions so;
        so.mode = o_.mode;
        so.tol = o_.tol;
        const int d_max = o_.d.value_or(4);
        SweepReport rep = sweep(d_max, o_.seed, so);
        json r = to_json(rep);
        const auto& s = r["summary"];
        return emit(r, std::string(rep.pass() ? "pass" : "FAIL") + ": " + std::to_string(s["passed"].get<int>()) + "/" +
                           std::to_string(s["constructed"].get<int>()) + " instances, " +
                           std::to_string(s["genericity_failures"].get<int>()) + " genericity failure(s)");
    }

    int write_corpus(const std::string& dir) {
        std::filesystem::create_directories(dir);
        for (const auto& e : corpus())
            write_text_file((std::filesystem::path(dir) / (e.name + ".json")).string(), corpus_entry_to_json(e).dump(2) + "\n");
        std::cout << "wrote " << corpus().size() << " corpus files to " << dir << "\n";
        return kPass;
    }

private:
    void need_files(std::size_t k) {
        if (o_.files.size() < k) throw InputError("missing curve file argument");
    }
    ExactCurve curve(std::size_t k) {
        need_files(k + 1);
        auto c = read_curve_file(o_.files[k]);
        if (c.degree() > o_.tol.degree_cap)
            throw InputError(o_.files[k] + ": degree cap exceeded: degree " + std::to_string(c.degree()) + " > " +
                             std::to_string(o_.tol.degree_cap));
        return c;
    }

    Options o_;
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Nodal plane curves: construction, singular points, tangent dimensions and perturbations"};
    app.require_subcommand(1);
    app.fallthrough();
    Options o;
    double tol_rank = 0.0, tol_res = 0.0;
    app.add_option("--seed", o.seed, "Master seed");
    app.add_option("--mode", o.mode_flag, "exact or float (default: SEVERI_MODE, then exact)")
        ->check(CLI::IsMember({"exact", "float"}));
    auto* rank_opt = app.add_option("--tol-rank", tol_rank, "Relative singular-value threshold")->check(CLI::PositiveNumber);
    auto* res_opt = app.add_option("--tol-res", tol_res, "Relative residual tolerance")->check(CLI::PositiveNumber);
    app.add_option("--out", o.out, "Report JSON path");
    app.add_option("--d", o.d, "Degree (sweep: maximal degree)");
    app.add_option("--n", o.n, "Number of nodes")->check(CLI::NonNegativeNumber);
    app.add_option("--delta", o.delta, "Fubini-Study perturbation size")->check(CLI::NonNegativeNumber);
    app.add_option("--trials", o.trials, "Number of perturbation trials")->check(CLI::NonNegativeNumber);

    auto* construct = app.add_subcommand("construct", "Construct a nodal curve through prescribed or random nodes");
    construct->add_option("--points", o.points, "Points JSON file");
    construct->add_flag("--irreducible", o.irreducible, "Resample until the curve is irreducible");
    auto* nodes = app.add_subcommand("nodes", "Singular points of a curve");
    nodes->add_option("curve", o.files, "Curve JSON file")->required()->expected(1);
    auto* genus = app.add_subcommand("genus", "Arithmetic genus of degree d, geometric genus with n nodes");
    auto* verify = app.add_subcommand("verify-dimension", "Tangent dimension at the nodal configuration of a curve");
    verify->add_option("curve", o.files, "Curve JSON file")->required()->expected(1);
    auto* perturb = app.add_subcommand("perturb", "Intersection stability experiment for two curves");
    perturb->add_option("curves", o.files, "Two curve JSON files")->required()->expected(2);
    auto* distance = app.add_subcommand("distance", "Fubini-Study distance between two curves");
    distance->add_option("curves", o.files, "Two curve JSON files")->required()->expected(2);
    auto* bezout = app.add_subcommand("bezout", "Intersection points and multiplicities of two curves");
    bezout->add_option("curves", o.files, "Two curve JSON files")->required()->expected(2);
    auto* report = app.add_subcommand("report", "Full property report, checked against an expected record if present");
    report->add_option("curve", o.files, "Curve or corpus JSON file")->required()->expected(1);
    auto* sweep_cmd = app.add_subcommand("sweep", "Batch dimension checks for all feasible (d, n) up to --d");
    std::string corpus_dir;
    auto* corpus_cmd = app.add_subcommand("corpus", "Write the canonical curve corpus");
    corpus_cmd->add_option("dir", corpus_dir, "Output directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kInputError;
    }

    std::string command = app.get_subcommands().front()->get_name();
    try {
        o.mode = resolve_mode(o.mode_flag);
        if (*rank_opt) o.tol.rank = tol_rank;
        if (*res_opt) o.tol.residual = tol_res;
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kInputError;
    }
    Runner run(o);
    try {
        if (*construct) return run.construct();
        if (*nodes) return run.nodes();
        if (*genus) return run.genus();
        if (*verify) return run.verify_dimension();
        if (*perturb) return run.perturb();
        if (*distance) return run.distance();
        if (*bezout) return run.bezout();
        if (*report) return run.report();
        if (*sweep_cmd) return run.sweep_command();
        if (*corpus_cmd) return run.write_corpus(corpus_dir);
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kInputError;
    } catch (const Error& e) {
        try {
            return run.failure(command, e.what());
        } catch (const InputError& w) {
            std::cerr << "input error: " << w.what() << "\n";
            return kInputError;
        }
    }
    return kInputError;
}
