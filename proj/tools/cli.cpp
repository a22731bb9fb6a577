#include "cli.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "qgraph/dieudonne.hpp"
#include "qgraph/error.hpp"
#include "qgraph/io.hpp"
#include "qgraph/metric.hpp"
#include "qgraph/model.hpp"
#include "qgraph/scan.hpp"
#include "qgraph/spectral.hpp"
#include "qgraph/verify.hpp"

namespace qgraph::cli {

namespace {

using io::json;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct GraphFlags {
    std::string graph;
    int n = 1;
    int q = 3;
    int arm_len = 1;
    int K = 2;
    int L = 1;
    double g = 0.0;
    double h = 0.0;
    double z = 0.0;

    [[nodiscard]] GraphSpec spec() const {
        if (graph.empty()) throw UsageError("--graph is required");
        GraphSpec s;
        s.kind = graph_kind_from_string(graph);
        s.n_points = n;
        s.q = q;
        s.arm_len = arm_len;
        s.K = K;
        s.L = L;
        return s;
    }
    [[nodiscard]] Couplings couplings() const { return {g, h, z}; }
};

void add_graph_flags(CLI::App* cmd, GraphFlags& f, bool with_graph) {
    if (with_graph) {
        cmd->add_option("--graph", f.graph, "Lattice family")->check(CLI::IsMember({"chain", "star", "loop"}));
        cmd->add_option("--n", f.n, "Chain length");
        cmd->add_option("--q", f.q, "Number of star arms");
        cmd->add_option("--arm-len", f.arm_len, "Sites per star arm");
    }
    cmd->add_option("--K", f.K, "Sites per outer wedge (loop)");
    cmd->add_option("--L", f.L, "Sites per loop branch (loop)");
    cmd->add_option("--g", f.g, "Left hub / upper branch coupling");
    cmd->add_option("--h", f.h, "Left hub / lower branch coupling");
    cmd->add_option("--z", f.z, "Outer wedge coupling");
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
    if (path.empty()) {
        out << text << '\n';
        return;
    }
    std::ofstream file(path);
    if (!file) throw Error("cannot open '" + path + "' for writing");
    file << text << '\n';
}

json read_json(std::istream& in) {
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw UsageError(std::string("could not parse JSON from standard input: ") + e.what());
    }
}

void warn_couplings(const Couplings& c, std::ostream& err) {
    const auto report = validate_couplings(c);
    for (const auto& e : report.errors) err << "warning: " << e << '\n';
    for (const auto& w : report.warnings) err << "warning: " << w << '\n';
}

Axis parse_axis(const std::string& text) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ':')) parts.push_back(item);
    if (parts.size() != 4) throw UsageError("--axis expects name:min:max:steps, got '" + text + "'");
    Axis a;
    try {
        a.param = param_from_string(parts[0]);
        a.min = std::stod(parts[1]);
        a.max = std::stod(parts[2]);
        a.steps = std::stoi(parts[3]);
    } catch (const Error& e) {
        throw UsageError(e.what());
    } catch (const std::exception&) {
        throw UsageError("--axis: malformed number in '" + text + "'");
    }
    return a;
}

std::map<Param, double> parse_fixed(const std::vector<std::string>& texts) {
    std::map<Param, double> out;
    for (const auto& text : texts) {
        std::stringstream ss(text);
        std::string item;
        while (std::getline(ss, item, ',')) {
            const auto eq = item.find('=');
            if (eq == std::string::npos) throw UsageError("--fixed expects name=value pairs, got '" + item + "'");
            try {
                out[param_from_string(item.substr(0, eq))] = std::stod(item.substr(eq + 1));
            } catch (const Error& e) {
                throw UsageError(e.what());
            } catch (const std::exception&) {
                throw UsageError("--fixed: malformed number in '" + item + "'");
            }
        }
    }
    return out;
}

io::MatrixMeta loop_meta(int K, int L, const Couplings& c) { return {GraphSpec::loop(K, L), c}; }

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
    CLI::App app{"Non-Hermitian discrete quantum graphs: Hamiltonians, metrics and reality domains", "qgraph"};
    app.set_help_flag("--help", "Print this help message and exit");
    app.require_subcommand(1);

    GraphFlags gf;
    double tol = kDefaultRealityTol;
    std::optional<double> alpha;
    std::vector<std::string> axes;
    std::vector<std::string> fixed;
    std::string csv_path;
    std::string json_path;
    std::uint64_t seed = kDefaultVerifySeed;
    int k_max = 4;

    auto* build = app.add_subcommand("build", "Assemble a lattice Hamiltonian and print it as matrix JSON");
    add_graph_flags(build, gf, true);
    build->add_option("--json", json_path, "Write JSON here instead of standard output");

    auto* spectrum = app.add_subcommand("spectrum", "Eigenvalues of a built graph or of a matrix JSON on stdin");
    add_graph_flags(spectrum, gf, true);
    spectrum->add_option("--tol", tol, "Relative reality tolerance");
    spectrum->add_option("--json", json_path, "Write JSON here instead of standard output");

    double rank_tol = kDefaultRankTol;
    auto* pseudo = app.add_subcommand("pseudometric", "Closed-form and numerical pseudometrics of the loop");
    add_graph_flags(pseudo, gf, false);
    pseudo->add_option("--tol", rank_tol, "Relative rank tolerance of the kernel SVD");
    pseudo->add_option("--json", json_path, "Write JSON here instead of standard output");

    auto* metric = app.add_subcommand("metric", "Positive metric of H(g,g;z), or Theta(alpha) at K=2, L=1");
    add_graph_flags(metric, gf, false);
    metric->add_option("--alpha", alpha, "Weight of the pseudometric in Theta(alpha)");
    metric->add_option("--json", json_path, "Write JSON here instead of standard output");

    auto* herm = app.add_subcommand("hermitize", "Dyson map and Hermitian image of H(g,g;z)");
    add_graph_flags(herm, gf, false);
    herm->add_option("--alpha", alpha, "Use Theta(alpha) instead of the diagonal metric (K=2, L=1)");
    herm->add_option("--tol", tol, "Relative reality tolerance");
    herm->add_option("--json", json_path, "Write JSON here instead of standard output");

    auto* scan = app.add_subcommand("scan", "Reality verdicts over a coupling grid");
    scan->add_option("--K", gf.K, "Sites per outer wedge");
    scan->add_option("--L", gf.L, "Sites per loop branch");
    scan->add_option("--axis", axes, "name:min:max:steps, repeatable up to 3 times")->required();
    scan->add_option("--fixed", fixed, "name=value[,name=value...] for parameters that are not scanned, repeatable");
    scan->add_option("--tol", tol, "Relative reality tolerance");
    scan->add_option("--csv", csv_path, "Write CSV here");
    scan->add_option("--json", json_path, "Write JSON here");

    auto* verify = app.add_subcommand("verify", "Run the built-in consistency checks");
    verify->add_option("--K-max", k_max, "Largest wedge size to check")->check(CLI::Range(2, 12));
    verify->add_option("--seed", seed, "Random seed for sampled couplings");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    std::string current = app.get_subcommands().front()->get_name();
    try {
        if (build->parsed()) {
            const auto spec = gf.spec();
            if (spec.kind == GraphKind::Loop) warn_couplings(gf.couplings(), err);
            const io::MatrixMeta meta{spec, spec.kind == GraphKind::Loop ? std::optional(gf.couplings()) : std::nullopt};
            emit(io::matrix_to_json(build_graph(spec, gf.couplings()), meta).dump(), json_path, out);
        } else if (spectrum->parsed()) {
            SpectrumReport report;
            if (gf.graph.empty()) {
                const auto parsed = io::matrix_from_json(read_json(in));
                report = parsed.is_complex ? eigenvalues(parsed.values, tol) : eigenvalues(parsed.real(), tol);
            } else {
                report = eigenvalues(build_graph(gf.spec(), gf.couplings()), tol);
            }
            emit(io::spectrum_to_json(report).dump(), json_path, out);
        } else if (pseudo->parsed()) {
            const Couplings c = gf.couplings();
            warn_couplings(c, err);
            const auto h = build_loop_hamiltonian(gf.K, gf.L, c);
            const auto meta = loop_meta(gf.K, gf.L, c);
            json j;
            if (gf.L == 1) {
                const auto p = closed_form_pseudometric(gf.K, c);
                j["closed_form"] = io::matrix_to_json(p, meta);
                j["closed_form"]["residual"] = residual(h, p);
                const auto in_p = inertia(p);
                j["closed_form"]["inertia"] = {in_p.positive, in_p.negative, in_p.zero};
            } else {
                j["closed_form"] = nullptr;
            }
            const auto spec = eigenvalues(h);
            const auto basis = kernel_basis(h, rank_tol);
            j["basis"] = io::basis_to_json(basis, meta);
            j["predicted_kernel_dimension"] = spec.all_real ? json(predicted_kernel_dimension(spec)) : json(nullptr);
            emit(j.dump(), json_path, out);
        } else if (metric->parsed() || herm->parsed()) {
            if (metric->count("--h") + herm->count("--h") > 0 && gf.h != gf.g) {
                throw UsageError("the diagonal metric needs h = g; omit --h or pass the same value");
            }
            const Couplings c{gf.g, gf.g, gf.z};
            warn_couplings(c, err);
            MetricResult m;
            if (alpha) {
                if (gf.K != 2 || gf.L != 1) throw UsageError("--alpha is only defined for K=2, L=1");
                m = theta_family_k2(gf.g, gf.z, *alpha);
            } else {
                m.theta = diagonal_metric(gf.K, gf.L, gf.g, gf.z);
                const auto pos = is_positive_definite(m.theta);
                m.positive_definite = pos.positive;
                m.min_eigenvalue = pos.min_eigenvalue;
            }
            const auto meta = loop_meta(gf.K, gf.L, c);
            if (metric->parsed()) {
                emit(io::metric_to_json(m, meta).dump(), json_path, out);
            } else {
                const auto h = build_loop_hamiltonian(gf.K, gf.L, c);
                const auto pair = hermitize(h, m.theta);
                json j;
                j["metric"] = io::metric_to_json(m, meta);
                j["omega"] = io::matrix_to_json(pair.omega, meta);
                j["hermitized"] = io::matrix_to_json(pair.hermitized, meta);
                j["hermiticity_defect"] = hermiticity_defect(pair.hermitized);
                j["spectrum_distance"] = spectra_match(eigenvalues(h, tol), eigenvalues(pair.hermitized, tol), tol).distance;
                emit(j.dump(), json_path, out);
            }
        } else if (scan->parsed()) {
            ScanRequest req;
            req.K = gf.K;
            req.L = gf.L;
            req.tol = tol;
            for (const auto& a : axes) req.axes.push_back(parse_axis(a));
            req.fixed = parse_fixed(fixed);
            try {
                validate_scan_request(req);
            } catch (const DomainError& e) {
                if (std::string(e.what()).find("too large") != std::string::npos) throw;
                throw UsageError(e.what());
            }
            const auto result = scan_reality_domain(req);
            if (!json_path.empty()) {
                json pts = json::array();
                for (const auto& p : result.points) {
                    pts.push_back({{"couplings", io::couplings_to_json(p.couplings)},
                                   {"all_real", p.all_real},
                                   {"max_abs_imag", p.max_abs_imag},
                                   {"metric_positive", p.metric_positive ? json(*p.metric_positive) : json(nullptr)}});
                }
                emit(json{{"K", req.K}, {"L", req.L}, {"points", std::move(pts)}}.dump(), json_path, out);
            }
            if (!csv_path.empty()) {
                std::ofstream file(csv_path);
                if (!file) throw Error("cannot open '" + csv_path + "' for writing");
                io::write_scan_csv(result, file);
            } else if (json_path.empty()) {
                io::write_scan_csv(result, out);
            }
        } else if (verify->parsed()) {
            VerifyOptions opts;
            opts.k_max = k_max;
            opts.seed = seed;
            bool all = true;
            for (const auto& r : run_verification(opts)) {
                out << (r.passed ? "PASS " : "FAIL ") << r.name << ": " << r.detail << '\n';
                all = all && r.passed;
            }
            return all ? 0 : 1;
        }
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "error in " << current << ": " << e.what() << '\n';
        return 1;
    }
    return 0;
}

}  // namespace qgraph::cli
