#include "wormhole/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <sstream>

#include "wormhole/aqc.hpp"
#include "wormhole/error.hpp"
#include "wormhole/marking.hpp"
#include "wormhole/orbitgraph.hpp"
#include "wormhole/spectral.hpp"
#include "wormhole/walk.hpp"

namespace wormhole::cli {

namespace {

using json = nlohmann::ordered_json;
using numtheory::Int;

constexpr const char* kOutputDirEnv = "WORMHOLE_OUTPUT_DIR";

std::string num(double x) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

std::string join(const std::vector<Int>& xs, char sep) {
    std::string s;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) s += sep;
        s += std::to_string(xs[i]);
    }
    return s;
}

Error invalid(const std::string& what) { return Error(ErrorCode::InvalidInput, what); }

// Per-command extras that do not belong in RunConfig.
struct Extras {
    bool exact = false;
    bool union_graph = false;
    bool allow_trivial = false;
    bool no_validate = false;
    std::size_t first_totatives = 0;
    std::optional<std::size_t> k_min;
    std::optional<std::size_t> k_max;
    std::uint64_t budget = marking::kDefaultEnumerationBudget;
    std::size_t attempts = 20;
    std::optional<double> eps;
    std::vector<double> times{1.0, 2.0, 5.0, 10.0, 20.0};
    std::string summary;
};

class Context {
public:
    Context(const RunConfig& cfg, const Extras& ex, std::ostream& out) : cfg_(cfg), ex_(ex), out_(out) {}

    const RunConfig& cfg() const { return cfg_; }
    const Extras& ex() const { return ex_; }

    bool json_format(const char* fallback) const {
        const std::string f = cfg_.format.empty() ? fallback : cfg_.format;
        if (f != "csv" && f != "json") throw invalid("--format must be csv or json");
        return f == "json";
    }

    std::vector<Int> alphas() const {
        if (ex_.first_totatives > 0) return numtheory::first_totatives(cfg_.n, ex_.first_totatives);
        if (!cfg_.alphas.empty()) return cfg_.alphas;
        for (Int a = 2; a < cfg_.n - 1; ++a) {
            if (numtheory::is_totative(a, cfg_.n)) return {a};
        }
        throw Error(ErrorCode::InvalidN, "N has no usable totative");
    }

    BuildOptions build_options() const {
        return BuildOptions{ex_.allow_trivial || ex_.first_totatives > 0, ex_.no_validate};
    }

    OrbitGraph graph(const std::vector<Int>& alphas) const {
        return OrbitGraph::build(cfg_.n, alphas, build_options());
    }

    FactorPair factors() const {
        try {
            return numtheory::factor_by_trial_division(cfg_.n);
        } catch (const Error& e) {
            throw Error(ErrorCode::InvalidN, e.what());
        }
    }

    /// Explicit --marks or a seeded sample of --k; exactly one must be given.
    MarkSet marks(std::size_t stream = 0) const {
        if (cfg_.marks && cfg_.k) throw invalid("give either --marks or --k, not both");
        if (cfg_.marks) {
            if (*cfg_.marks == "all-but-one") {
                std::vector<Int> all;
                for (Int v = 1; v < cfg_.n - 1; ++v) all.push_back(v);
                return MarkSet::from(std::move(all), cfg_.n);
            }
            std::vector<Int> vs;
            std::stringstream ss(*cfg_.marks);
            std::string tok;
            while (std::getline(ss, tok, ',')) {
                Int v = 0;
                const auto r = std::from_chars(tok.data(), tok.data() + tok.size(), v);
                if (r.ec != std::errc{} || r.ptr != tok.data() + tok.size()) {
                    throw Error(ErrorCode::InvalidMarks, "cannot parse mark '" + tok + "'");
                }
                vs.push_back(v);
            }
            return MarkSet::from(std::move(vs), cfg_.n);
        }
        if (cfg_.k) {
            auto rng = substream(cfg_.seed, *cfg_.k, stream);
            return marking::sample_marks(static_cast<std::size_t>(cfg_.n - 1), *cfg_.k, rng);
        }
        throw invalid("this command needs --marks or --k");
    }

    marking::Mode mode() const {
        if (cfg_.mode == "strict") return marking::Mode::Strict;
        if (cfg_.mode == "weak") return marking::Mode::Weak;
        throw invalid("--mode must be strict or weak");
    }

    walk::WalkOptions walk_options() const {
        walk::WalkOptions o;
        o.dt = cfg_.dt;
        o.tol = cfg_.tol;
        o.max_iters = cfg_.max_iters;
        o.snapshot_cadence = cfg_.cadence;
        return o;
    }

    void require_time() const {
        if (!std::isfinite(cfg_.total_time) || cfg_.total_time < 0.0) {
            throw Error(ErrorCode::InvalidT, "--time must be finite and nonnegative");
        }
    }

    /// Writes to --output (relative paths resolve under $WORMHOLE_OUTPUT_DIR)
    /// or to the command's stdout stream.
    void emit(const std::string& text) const {
        if (cfg_.output.empty() || cfg_.output == "-") {
            out_ << text;
            return;
        }
        write_file(cfg_.output, text);
    }

    void write_file(const std::string& name, const std::string& text) const {
        std::filesystem::path path(name);
        if (path.is_relative()) {
            if (const char* dir = std::getenv(kOutputDirEnv); dir && *dir) path = std::filesystem::path(dir) / path;
        }
        std::ofstream f(path, std::ios::binary);
        if (!f) throw invalid("cannot open output file " + path.string());
        f << text;
    }

    std::ostream& out() const { return out_; }

private:
    const RunConfig& cfg_;
    const Extras& ex_;
    std::ostream& out_;
};

json components_json(const CycleDecomposition& d) {
    json comps = json::array();
    for (const auto& c : d.components) {
        comps.push_back({{"class", std::string(to_string(c.vertex_class))}, {"vertices", c.vertices}});
    }
    return json{{"N", d.n}, {"alphas", d.alphas}, {"components", comps}};
}

int cmd_graph(const Context& ctx) {
    const OrbitGraph g = ctx.graph(ctx.alphas());
    const CycleDecomposition d = decompose(g, ctx.factors());
    if (ctx.json_format("json")) {
        ctx.emit(components_json(d).dump(2) + "\n");
        return 0;
    }
    std::string csv = "component,class,vertex\n";
    for (std::size_t c = 0; c < d.components.size(); ++c) {
        for (Int v : d.components[c].vertices) {
            csv += std::to_string(c) + "," + std::string(to_string(d.components[c].vertex_class)) + "," +
                   std::to_string(v) + "\n";
        }
    }
    ctx.emit(csv);
    return 0;
}

int cmd_cycles(const Context& ctx) {
    const std::vector<Int> alphas = ctx.alphas();
    const OrbitGraph g = ctx.graph(alphas);
    const FactorPair f = ctx.factors();
    const CycleDecomposition d = decompose(g, f);
    CycleCountBreakdown traversal;
    traversal.red_count = static_cast<Int>(d.count(VertexClass::Red));
    traversal.blue_count = static_cast<Int>(d.count(VertexClass::Blue));
    traversal.black_count = static_cast<Int>(d.count(VertexClass::Black));
    traversal.total = static_cast<Int>(d.components.size());

    std::optional<CycleCountBreakdown> formula;
    if (alphas.size() == 1) formula = cycle_count_formula(f, alphas.front());
    const bool agree = !formula || (formula->red_count == traversal.red_count &&
                                    formula->blue_count == traversal.blue_count &&
                                    formula->black_count == traversal.black_count &&
                                    formula->total == traversal.total);

    auto as_json = [](const CycleCountBreakdown& b) {
        return json{{"red", b.red_count}, {"blue", b.blue_count}, {"black", b.black_count}, {"total", b.total}};
    };
    if (ctx.json_format("json")) {
        json doc{{"N", f.n}, {"p", f.p}, {"q", f.q}, {"alphas", alphas}, {"traversal", as_json(traversal)}};
        doc["formula"] = formula ? as_json(*formula) : json(nullptr);
        doc["agree"] = agree;
        ctx.emit(doc.dump(2) + "\n");
    } else {
        std::string csv = "source,red,blue,black,total\n";
        auto row = [&](const char* name, const CycleCountBreakdown& b) {
            csv += std::string(name) + "," + std::to_string(b.red_count) + "," + std::to_string(b.blue_count) +
                   "," + std::to_string(b.black_count) + "," + std::to_string(b.total) + "\n";
        };
        if (formula) row("formula", *formula);
        row("traversal", traversal);
        ctx.emit(csv);
    }
    return agree ? 0 : 3;
}

int cmd_markprob(const Context& ctx) {
    const std::vector<Int> alphas = ctx.alphas();
    const FactorPair f = ctx.factors();
    const marking::Mode mode = ctx.mode();
    const auto nv = static_cast<std::size_t>(ctx.cfg().n - 1);

    std::vector<std::size_t> ks;
    if (ctx.cfg().k) {
        ks.push_back(*ctx.cfg().k);
    } else {
        const std::size_t lo = ctx.ex().k_min.value_or(1);
        const std::size_t hi = ctx.ex().k_max.value_or(nv - 1);
        for (std::size_t k = lo; k <= hi; ++k) ks.push_back(k);
    }
    if (ctx.cfg().trials < 1) throw invalid("--trials must be at least 1");

    std::vector<std::vector<Int>> graphs;
    if (ctx.ex().union_graph) {
        graphs.push_back(alphas);
    } else {
        for (Int a : alphas) graphs.push_back({a});
    }

    struct Row {
        std::string alpha;
        marking::SuccessEstimate e;
    };
    std::vector<Row> rows;
    for (const auto& group : graphs) {
        const OrbitGraph g = ctx.graph(group);
        const std::string label = join(group, '+');
        std::vector<std::size_t> sampled;
        std::vector<marking::SuccessEstimate> cells(ks.size());
        std::vector<bool> done(ks.size(), false);
        for (std::size_t i = 0; i < ks.size(); ++i) {
            if (!ctx.ex().exact) break;
            try {
                const auto p = marking::exact_success_prob(g, f, ks[i], mode, ctx.ex().budget);
                cells[i] = marking::SuccessEstimate{ks[i], p.subsets, p.successes, p.value(), 0.0};
                done[i] = true;
            } catch (const Error& e) {
                if (e.code() != ErrorCode::UseMonteCarlo) throw;
            }
        }
        for (std::size_t i = 0; i < ks.size(); ++i) {
            if (!done[i]) sampled.push_back(ks[i]);
        }
        const auto estimates = marking::success_sweep(g, f, sampled, ctx.cfg().trials, mode, ctx.cfg().seed);
        for (std::size_t i = 0, j = 0; i < ks.size(); ++i) {
            rows.push_back(Row{label, done[i] ? cells[i] : estimates[j++]});
        }
    }

    if (ctx.json_format("csv")) {
        json arr = json::array();
        for (const auto& r : rows) {
            arr.push_back({{"alpha", r.alpha}, {"k", r.e.k}, {"trials", r.e.trials}, {"successes", r.e.successes},
                           {"p_hat", r.e.p_hat}, {"std_err", r.e.std_err}});
        }
        ctx.emit(json{{"N", f.n}, {"mode", ctx.cfg().mode}, {"seed", ctx.cfg().seed}, {"rows", arr}}.dump(2) + "\n");
        return 0;
    }
    std::string csv = "alpha,k,trials,successes,p_hat,std_err\n";
    for (const auto& r : rows) {
        csv += r.alpha + "," + std::to_string(r.e.k) + "," + std::to_string(r.e.trials) + "," +
               std::to_string(r.e.successes) + "," + num(r.e.p_hat) + "," + num(r.e.std_err) + "\n";
    }
    ctx.emit(csv);
    return 0;
}

json factor_json(const std::optional<FactorPair>& f) {
    return f ? json::array({f->p, f->q}) : json(nullptr);
}

int cmd_walk(const Context& ctx) {
    const OrbitGraph g = ctx.graph(ctx.alphas());
    const MarkSet marks = ctx.marks();
    const walk::WalkTrace trace = walk::run(g, marks, ctx.walk_options());
    const double eps = ctx.ex().eps.value_or(marking::default_weak_eps(g.n()));
    const auto factor = walk::extract_factor(trace.final_state().distribution, trace.vertices, g.n(), eps);

    if (ctx.json_format("csv")) {
        json fin = json::array();
        const auto full = trace.full_distribution(trace.final_state());
        for (std::size_t i = 0; i < full.size(); ++i) {
            fin.push_back({{"vertex", i + 1}, {"probability", full[i]}});
        }
        json doc{{"N", g.n()},           {"alphas", g.alphas()},       {"marks", marks.vertices()},
                 {"dt", trace.dt},       {"iterations", trace.iterations}, {"converged", trace.converged},
                 {"final", fin},         {"factor", factor_json(factor)}};
        ctx.emit(doc.dump(2) + "\n");
        return 0;
    }
    std::string csv = "t,vertex,probability\n";
    for (const auto& snap : trace.snapshots) {
        const auto full = trace.full_distribution(snap);
        const std::string t = std::to_string(snap.t);
        for (std::size_t i = 0; i < full.size(); ++i) {
            csv += t + "," + std::to_string(i + 1) + "," + num(full[i]) + "\n";
        }
    }
    ctx.emit(csv);
    return 0;
}

struct QuantumRun {
    aqc::Evolution evolution;
    aqc::AmplitudeResult result;
    std::vector<Int> vertices;
    double cosine = 0.0;
};

QuantumRun quantum_run(const Context& ctx, const OrbitGraph& g, const MarkSet& marks, double total_time,
                       const std::vector<double>& classical) {
    const aqc::HamiltonianSystem sys = aqc::build_system(g, marks, total_time);
    const std::size_t steps = ctx.cfg().steps ? ctx.cfg().steps : aqc::default_steps(total_time, sys.max_degree);
    QuantumRun r;
    r.vertices = sys.vertices;
    r.evolution = aqc::evolve(sys, aqc::ground_state_initial(sys.dimension()), steps, ctx.cfg().cadence);
    r.result = aqc::amplitudes(r.evolution.snapshots.back(), sys.vertices, g.n());
    r.cosine = aqc::cosine_similarity(r.result.amps, classical);
    return r;
}

std::vector<double> classical_limit(const Context& ctx, const OrbitGraph& g, const MarkSet& marks) {
    walk::WalkOptions o = ctx.walk_options();
    o.snapshot_cadence = 0;
    const walk::WalkTrace trace = walk::run(g, marks, o);
    return trace.full_distribution(trace.final_state());
}

json summary_json(double total_time, const QuantumRun& r) {
    return json{{"T", total_time},
                {"steps", r.evolution.steps},
                {"final_cosine_vs_classical", r.cosine},
                {"norm_drift_max", r.evolution.max_step_drift}};
}

int cmd_aqc(const Context& ctx) {
    ctx.require_time();
    const OrbitGraph g = ctx.graph(ctx.alphas());
    const MarkSet marks = ctx.marks();
    const auto classical = classical_limit(ctx, g, marks);
    const QuantumRun r = quantum_run(ctx, g, marks, ctx.cfg().total_time, classical);
    const json summary = summary_json(ctx.cfg().total_time, r);

    if (ctx.json_format("csv")) {
        json doc = summary;
        doc["amps"] = r.result.amps;
        doc["probs"] = r.result.probs;
        ctx.emit(doc.dump(2) + "\n");
        return 0;
    }
    std::string csv = "s,vertex,abs_amplitude,probability\n";
    for (const auto& snap : r.evolution.snapshots) {
        std::vector<double> abs_amp(static_cast<std::size_t>(g.n() - 1), 0.0);
        for (std::size_t i = 0; i < r.vertices.size(); ++i) {
            abs_amp[static_cast<std::size_t>(r.vertices[i] - 1)] = std::abs(snap.amplitudes[i]);
        }
        const std::string s = num(snap.s);
        for (std::size_t i = 0; i < abs_amp.size(); ++i) {
            csv += s + "," + std::to_string(i + 1) + "," + num(abs_amp[i]) + "," + num(abs_amp[i] * abs_amp[i]) + "\n";
        }
    }
    ctx.emit(csv);
    const std::string text = summary.dump(2) + "\n";
    if (!ctx.ex().summary.empty()) {
        ctx.write_file(ctx.ex().summary, text);
    } else if (!ctx.cfg().output.empty() && ctx.cfg().output != "-") {
        ctx.write_file(ctx.cfg().output + ".summary.json", text);
    }
    return 0;
}

int cmd_compare(const Context& ctx) {
    const OrbitGraph g = ctx.graph(ctx.alphas());
    const MarkSet marks = ctx.marks();
    const auto classical = classical_limit(ctx, g, marks);
    std::vector<std::pair<double, QuantumRun>> runs;
    for (double t : ctx.ex().times) {
        if (!std::isfinite(t) || t < 0.0) throw Error(ErrorCode::InvalidT, "T values must be nonnegative");
        runs.emplace_back(t, quantum_run(ctx, g, marks, t, classical));
    }
    if (ctx.json_format("csv")) {
        json arr = json::array();
        for (const auto& [t, r] : runs) arr.push_back(summary_json(t, r));
        ctx.emit(json{{"N", g.n()}, {"alphas", g.alphas()}, {"marks", marks.vertices()}, {"runs", arr}}.dump(2) + "\n");
        return 0;
    }
    std::string csv = "T,steps,cosine,norm_drift_max\n";
    for (const auto& [t, r] : runs) {
        csv += num(t) + "," + std::to_string(r.evolution.steps) + "," + num(r.cosine) + "," +
               num(r.evolution.max_step_drift) + "\n";
    }
    ctx.emit(csv);
    return 0;
}

int cmd_factor(const Context& ctx) {
    // Validates N without handing the factors to the pipeline.
    ctx.factors();
    const OrbitGraph g = ctx.graph(ctx.alphas());
    if (ctx.cfg().marks) throw invalid("factor samples its own marks; use --k");
    const std::size_t components = connected_components(g).size();
    const std::size_t k = ctx.cfg().k.value_or(std::max<std::size_t>(1, components - 1));
    const double eps = ctx.ex().eps.value_or(marking::default_weak_eps(g.n()));
    const auto nv = static_cast<std::size_t>(g.n() - 1);

    json doc{{"N", g.n()}, {"alphas", g.alphas()}, {"seed", ctx.cfg().seed}, {"k", k}};
    for (std::size_t attempt = 1; attempt <= ctx.ex().attempts; ++attempt) {
        auto rng = substream(ctx.cfg().seed, k, attempt);
        const MarkSet marks = marking::sample_marks(nv, k, rng);
        std::optional<FactorPair> found;
        try {
            const walk::WalkTrace trace = walk::run(g, marks, ctx.walk_options());
            found = walk::extract_factor(trace.final_state().distribution, trace.vertices, g.n(), eps);
        } catch (const Error& e) {
            if (exit_code(e.code()) != 3) throw;
        }
        if (found) {
            doc["p"] = found->p;
            doc["q"] = found->q;
            doc["attempts"] = attempt;
            doc["marks"] = marks.vertices();
            if (ctx.json_format("json")) {
                ctx.emit(doc.dump(2) + "\n");
            } else {
                ctx.emit("N,p,q,attempts,seed,k\n" + std::to_string(g.n()) + "," + std::to_string(found->p) + "," +
                         std::to_string(found->q) + "," + std::to_string(attempt) + "," +
                         std::to_string(ctx.cfg().seed) + "," + std::to_string(k) + "\n");
            }
            return 0;
        }
    }
    throw Error(ErrorCode::FactorNotFound,
                "no factor after " + std::to_string(ctx.ex().attempts) + " attempts");
}

int cmd_spectrum(const Context& ctx) {
    const OrbitGraph g = ctx.graph(ctx.alphas());
    Matrix h;
    if (ctx.cfg().marks || ctx.cfg().k) {
        h = walk::grounded_laplacian(g, ctx.marks()).matrix;
    } else {
        h = laplacian(g);
    }
    const spectral::EigenResult eig = spectral::full_eigen(h);
    const double gap = eig.eigenvalues.size() > 1 ? eig.eigenvalues[1] - eig.eigenvalues[0] : 0.0;
    const std::size_t mult = spectral::minimal_multiplicity(eig);
    if (ctx.json_format("json")) {
        json doc{{"dimension", h.rows()},
                 {"eigenvalues", eig.eigenvalues},
                 {"gap", gap},
                 {"minimal_multiplicity", mult},
                 {"gap_above_minimal_space", spectral::minimal_space_gap(eig)}};
        ctx.emit(doc.dump(2) + "\n");
        return 0;
    }
    std::string csv = "index,eigenvalue\n";
    for (std::size_t i = 0; i < eig.eigenvalues.size(); ++i) {
        csv += std::to_string(i) + "," + num(eig.eigenvalues[i]) + "\n";
    }
    ctx.emit(csv);
    return 0;
}

void report(std::ostream& err, const std::string& code, const std::string& message) {
    err << json{{"error", code}, {"message", message}}.dump() << "\n";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    Extras ex;

    CLI::App app{"Semiprime factoring by wormhole random walks and simulated adiabatic evolution", "wormhole"};
    app.require_subcommand(1);

    auto common = [&](CLI::App* sub) {
        sub->add_option("--n", cfg.n, "Semiprime N")->required();
        sub->add_option("--alphas", cfg.alphas, "Comma-separated multipliers")->delimiter(',');
        sub->add_option("--format", cfg.format, "csv or json");
        sub->add_option("--output", cfg.output, "Output path (relative paths resolve under $WORMHOLE_OUTPUT_DIR)");
        sub->add_flag("--allow-trivial-alpha", ex.allow_trivial, "Permit alpha = 1 and alpha = N-1");
        sub->add_flag("--no-validate", ex.no_validate, "Skip the semiprime check when building the graph");
    };
    auto marks_opts = [&](CLI::App* sub) {
        sub->add_option("--marks", cfg.marks, "Comma-separated marked vertices, or all-but-one");
        sub->add_option("--k", cfg.k, "Number of marks to sample");
        sub->add_option("--seed", cfg.seed, "Master seed");
    };
    auto walk_opts = [&](CLI::App* sub) {
        sub->add_option("--dt", cfg.dt, "Walk time step");
        sub->add_option("--tol", cfg.tol, "Convergence threshold on the l-infinity change");
        sub->add_option("--max-iters", cfg.max_iters, "Iteration cap");
    };
    auto time_opts = [&](CLI::App* sub) {
        sub->add_option("--steps", cfg.steps, "RK4 steps (default scales with T)");
        sub->add_option("--cadence", cfg.cadence, "Snapshot every this many steps");
    };

    std::map<CLI::App*, std::function<int(const Context&)>> handlers;

    auto* graph = app.add_subcommand("graph", "Connected components with color classes");
    common(graph);
    handlers[graph] = cmd_graph;

    auto* cycles = app.add_subcommand("cycles", "Cycle count by formula and by traversal");
    common(cycles);
    handlers[cycles] = cmd_cycles;

    auto* markprob = app.add_subcommand("mark-prob", "Success probability P(k) sweep");
    common(markprob);
    markprob->add_option("--k", cfg.k, "Single k");
    markprob->add_option("--k-min", ex.k_min, "First k of the sweep");
    markprob->add_option("--k-max", ex.k_max, "Last k of the sweep");
    markprob->add_option("--trials", cfg.trials, "Monte Carlo trials per cell");
    markprob->add_option("--mode", cfg.mode, "strict or weak");
    markprob->add_option("--seed", cfg.seed, "Master seed");
    markprob->add_option("--budget", ex.budget, "Largest subset count enumerated exactly");
    markprob->add_option("--first-totatives", ex.first_totatives, "Use the first M totatives as alphas");
    markprob->add_flag("--exact", ex.exact, "Enumerate subsets exactly when within budget");
    markprob->add_flag("--union", ex.union_graph, "One graph from all alphas instead of one per alpha");
    handlers[markprob] = cmd_markprob;

    auto* walkc = app.add_subcommand("walk", "Classical wormhole walk trace");
    common(walkc);
    marks_opts(walkc);
    walk_opts(walkc);
    walkc->add_option("--cadence", cfg.cadence, "Snapshot every this many iterations");
    walkc->add_option("--eps", ex.eps, "Mass threshold for factor extraction");
    handlers[walkc] = cmd_walk;

    auto* aqcc = app.add_subcommand("aqc", "Simulated adiabatic evolution");
    common(aqcc);
    marks_opts(aqcc);
    walk_opts(aqcc);
    time_opts(aqcc);
    aqcc->add_option("--time", cfg.total_time, "Total evolution time T");
    aqcc->add_option("--summary", ex.summary, "Summary JSON path");
    handlers[aqcc] = cmd_aqc;

    auto* compare = app.add_subcommand("compare", "Quantum vs classical cosine over T");
    common(compare);
    marks_opts(compare);
    walk_opts(compare);
    compare->add_option("--steps", cfg.steps, "RK4 steps (default scales with T)");
    compare->add_option("--times", ex.times, "Comma-separated T values")->delimiter(',');
    handlers[compare] = cmd_compare;

    auto* factor = app.add_subcommand("factor", "Sample marks, walk, and extract a factor");
    common(factor);
    marks_opts(factor);
    walk_opts(factor);
    factor->add_option("--attempts", ex.attempts, "Retry budget");
    factor->add_option("--eps", ex.eps, "Mass threshold for factor extraction");
    handlers[factor] = cmd_factor;

    auto* spectrum = app.add_subcommand("spectrum", "Eigenvalues of the (grounded) Laplacian");
    common(spectrum);
    marks_opts(spectrum);
    handlers[spectrum] = cmd_spectrum;

    std::vector<std::string> rev(args.rbegin(), args.rend());
    if (!rev.empty()) rev.pop_back();  // program name
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        report(err, "invalid-arguments", e.what());
        return 2;
    }

    try {
        for (auto& [sub, handler] : handlers) {
            if (sub->parsed()) {
                if (cfg.n < 6) throw Error(ErrorCode::InvalidN, "N must be at least 6");
                return handler(Context(cfg, ex, out));
            }
        }
    } catch (const Error& e) {
        report(err, std::string(to_string(e.code())), e.what());
        return exit_code(e.code());
    }
    return 2;
}

}  // namespace wormhole::cli
