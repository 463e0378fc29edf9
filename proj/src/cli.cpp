#include "graphdiscord/cli.hpp"

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "graphdiscord/discord.hpp"
#include "graphdiscord/errors.hpp"
#include "graphdiscord/gates.hpp"
#include "graphdiscord/graph.hpp"
#include "graphdiscord/matrix_io.hpp"
#include "graphdiscord/oracle.hpp"
#include "text_format.hpp"

namespace gd::cli {

namespace {

using detail::format_real;
using detail::json_string;

constexpr double kOracleZero = 2e-3;

struct GlobalOptions {
    double tol = 1e-9;
    std::string format = "text";
    std::string measured = "B";
    std::string convention = "auto";
    std::string partition;

    [[nodiscard]] bool structured() const { return format == "structured"; }
    [[nodiscard]] Tolerance tolerance() const { return {tol, tol}; }
    [[nodiscard]] Side side() const { return measured == "A" ? Side::A : Side::B; }
};

std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if(!in) throw ParseError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string &path, const std::string &text) {
    std::ofstream out(path, std::ios::binary);
    if(!out || !(out << text)) throw ParseError("cannot write '" + path + "'");
}

std::string text_real(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", x == 0.0 ? 0.0 : x);
    return buf;
}

std::optional<Partition> parse_partition_flag(const std::string &s) {
    if(s.empty()) return std::nullopt;
    int p = -1, q = -1;
    char comma = 0;
    std::istringstream in(s);
    if(!(in >> p >> comma >> q) || comma != ',' || p < 0 || q < 0 || !in.eof())
        throw ParseError("--partition must look like P,Q");
    return Partition{p, q};
}

// A loaded input file: either a graph document or a matrix document.
struct Input {
    std::optional<WeightedGraph> graph;
    ComplexMatrix matrix; // only for matrix documents
    Partition partition;
    bool has_partition_field = false;
};

Input load_input(const std::string &path, const GlobalOptions &g) {
    const std::string text = read_file(path);
    const auto flag_partition = parse_partition_flag(g.partition);
    nlohmann::json peek;
    try {
        peek = nlohmann::json::parse(text);
    } catch(const nlohmann::json::parse_error &e) {
        throw ParseError(path + ": " + e.what());
    }
    Input in;
    if(peek.is_object() && peek.contains("qubits")) {
        WeightedGraph graph = parse_graph(text);
        if(flag_partition) {
            if(flag_partition->qubits() != graph.qubits())
                throw ParseError("--partition does not match the graph's qubit count");
            WeightedGraph re(*flag_partition);
            re.set_preferred_convention(graph.preferred_convention());
            for(const auto &e : graph.edges()) re.add_edge(e.u, e.v, e.w);
            for(const auto &[v, w] : graph.loops()) re.set_loop(v, w);
            graph = std::move(re);
        }
        in.partition = graph.partition();
        in.has_partition_field = true;
        in.graph = std::move(graph);
        return in;
    }
    MatrixDocument doc = parse_matrix(text);
    const auto dim = static_cast<std::size_t>(doc.matrix.rows());
    in.has_partition_field = doc.partition.has_value() || flag_partition.has_value();
    if(flag_partition)
        in.partition = *flag_partition;
    else if(doc.partition)
        in.partition = *doc.partition;
    else {
        if(!is_power_of_two(dim) || dim < 2) throw DimensionError("matrix dimension " + std::to_string(dim) + " is not 2^n");
        in.partition = default_partition(qubit_count(dim));
    }
    if(in.partition.dim() != dim) throw DimensionError("partition does not match matrix dimension");
    in.matrix = std::move(doc.matrix);
    return in;
}

LaplacianConvention resolve_convention(const WeightedGraph &graph, const GlobalOptions &g) {
    if(g.convention == "magnitude") return LaplacianConvention::magnitude;
    if(g.convention == "signed") return LaplacianConvention::signed_;
    return effective_convention(graph);
}

DensityOperator to_state(const Input &in, const GlobalOptions &g) {
    if(in.graph) return density_operator(*in.graph, resolve_convention(*in.graph, g), g.tolerance());
    return DensityOperator(in.matrix, in.partition, g.tolerance());
}

std::string matrix_document(const DensityOperator &rho, bool with_partition) {
    return serialize_matrix(rho.matrix(), with_partition ? std::optional<Partition>(rho.partition()) : std::nullopt);
}

// Shared rendering of a check report.
struct Report {
    std::string check;
    std::string verdict;
    std::vector<CertificateResult> certificates;
    std::optional<LaplacianConvention> convention;
    std::optional<Side> measured;
    Tolerance tol;
    std::vector<std::string> notes;
};

void print_report(std::ostream &out, const Report &r) {
    out << std::left;
    out << std::setw(16) << "check" << r.check << '\n';
    out << std::setw(16) << "verdict" << r.verdict << '\n';
    if(r.measured) out << std::setw(16) << "measured side" << to_string(*r.measured) << '\n';
    out << std::setw(16) << "convention" << (r.convention ? to_string(*r.convention) : std::string_view("none")) << '\n';
    out << std::setw(16) << "tolerance" << text_real(r.tol.abs_eps) << " abs, " << text_real(r.tol.rel_eps) << " rel\n";
    std::size_t width = 12;
    for(const auto &c : r.certificates) width = std::max(width, c.name.size() + 2);
    out << '\n' << std::setw(static_cast<int>(width)) << "certificate" << std::setw(8) << "passed" << "residual\n";
    for(const auto &c : r.certificates)
        out << std::setw(static_cast<int>(width)) << c.name << std::setw(8) << (c.passed ? "yes" : "no")
            << text_real(c.residual) << '\n';
    for(const auto &n : r.notes) out << "note: " << n << '\n';
}

std::string structured_report(const Report &r) {
    std::ostringstream os;
    os << "{\n  \"check\": " << json_string(r.check) << ",\n  \"verdict\": " << json_string(r.verdict)
       << ",\n  \"certificates\": [";
    for(std::size_t k = 0; k < r.certificates.size(); ++k) {
        const auto &c = r.certificates[k];
        os << (k == 0 ? "\n" : ",\n") << "    {\"name\": " << json_string(c.name)
           << ", \"passed\": " << (c.passed ? "true" : "false") << ", \"residual\": " << format_real(c.residual) << "}";
    }
    os << (r.certificates.empty() ? "],\n" : "\n  ],\n");
    os << "  \"convention\": " << (r.convention ? json_string(to_string(*r.convention)) : std::string("null")) << ",\n";
    os << "  \"tolerances\": {\"abs\": " << format_real(r.tol.abs_eps) << ", \"rel\": " << format_real(r.tol.rel_eps)
       << "},\n";
    os << "  \"notes\": [";
    for(std::size_t k = 0; k < r.notes.size(); ++k) os << (k == 0 ? "" : ", ") << json_string(r.notes[k]);
    os << "]\n}\n";
    return os.str();
}

int cmd_build(const std::string &file, const std::string &out_file, const GlobalOptions &g, std::ostream &out) {
    const Input in = load_input(file, g);
    if(!in.graph) throw ParseError("build expects a graph document");
    const auto conv = resolve_convention(*in.graph, g);
    const DensityOperator rho = density_operator(*in.graph, conv, g.tolerance());
    const std::string doc = matrix_document(rho, true);
    if(!out_file.empty()) write_file(out_file, doc);
    const double tr = rho.matrix().trace().real();
    const double pur = purity(rho.matrix());
    if(g.structured()) {
        out << "{\n  \"trace\": " << format_real(tr) << ",\n  \"min_eigenvalue\": " << format_real(rho.min_eigenvalue())
            << ",\n  \"purity\": " << format_real(pur) << ",\n  \"convention\": " << json_string(to_string(conv))
            << ",\n  \"dim\": " << rho.dim() << ",\n  \"output\": "
            << (out_file.empty() ? std::string("null") : json_string(out_file)) << "\n}\n";
    } else {
        out << std::left << std::setw(16) << "dim" << rho.dim() << '\n'
            << std::setw(16) << "convention" << to_string(conv) << '\n'
            << std::setw(16) << "trace" << text_real(tr) << '\n'
            << std::setw(16) << "min eigenvalue" << text_real(rho.min_eigenvalue()) << '\n'
            << std::setw(16) << "purity" << text_real(pur) << '\n';
        if(out_file.empty()) out << '\n' << doc;
    }
    return ok;
}

Report check_pure(const Input &in, const GlobalOptions &g) {
    const Tolerance tol = g.tolerance();
    const DensityOperator rho = to_state(in, g);
    Report r{"pure", "", {}, rho.convention(), std::nullopt, tol, {}};
    const double pur = purity(rho.matrix());
    r.certificates.push_back({"purity", std::abs(pur - 1.0) <= tol.threshold(1.0), std::abs(pur - 1.0)});
    r.certificates.push_back({"pure_by_entries", pure_by_entries(rho, tol), 0.0});
    if(in.graph) r.certificates.push_back({"pure_by_component", pure_by_component(*in.graph, *rho.convention(), tol), 0.0});
    const bool any = std::any_of(r.certificates.begin(), r.certificates.end(), [](const auto &c) { return c.passed; });
    r.verdict = any ? "pure" : "not_pure";
    return r;
}

Report check_psd(const Input &in, const GlobalOptions &g) {
    const Tolerance tol = g.tolerance();
    ComplexMatrix m;
    std::optional<LaplacianConvention> conv;
    if(in.graph) {
        conv = resolve_convention(*in.graph, g);
        m = laplacian(*in.graph, *conv);
        const double tr = m.trace().real();
        if(!(tr > 0.0)) throw NormalizationError("Laplacian trace is not positive");
        m /= tr;
    } else {
        m = in.matrix;
    }
    if(!is_hermitian(m, tol)) throw ContractViolation("psd check needs a Hermitian matrix");
    Report r{"psd", "", {}, conv, std::nullopt, tol, {}};
    const auto eig = hermitian_eigenvalues(m);
    const double min_eig = eig.empty() ? 0.0 : eig.front();
    const bool psd = min_eig >= -tol.threshold(maxnorm(m));
    const auto minors = psd_necessary_minors(m, tol);
    const auto split = psd_sufficient_split(m, tol);
    double slack = split.per_row_slack.empty() ? 0.0 : split.per_row_slack.front();
    for(double s : split.per_row_slack) slack = std::min(slack, s);
    r.certificates.push_back({"eigenvalues", psd, min_eig});
    r.certificates.push_back({"all_minors_nonneg", minors.all_minors_nonneg, minors.worst_minor});
    r.certificates.push_back({"sufficient_split", split.satisfied, slack});
    r.certificates.push_back({"diag_dominance", minors.diag_dominance, 0.0});
    r.notes.emplace_back("eigenvalues decides; diag_dominance is informational");
    if(split.gauge) r.notes.emplace_back("real-part sign gauge is consistent");
    r.verdict = psd ? "psd" : "not_psd";
    return r;
}

int cmd_check(const std::string &which, const std::string &file, bool audit, const GlobalOptions &g,
              std::ostream &out) {
    const Input in = load_input(file, g);
    if(which == "discord") {
        CertificateReport rep;
        const VerdictOptions opts{audit};
        if(in.graph) {
            WeightedGraph graph = *in.graph;
            if(g.convention != "auto") graph.set_preferred_convention(resolve_convention(graph, g));
            rep = zero_discord_verdict(graph, g.side(), g.tolerance(), opts);
        } else {
            rep = zero_discord_verdict(to_state(in, g), g.side(), g.tolerance(), opts);
        }
        if(g.structured())
            out << serialize_report(rep);
        else
            print_report(out, {"discord", std::string(to_string(rep.verdict)), rep.certificates, rep.convention,
                               rep.measured, rep.tolerance, rep.notes});
        return rep.verdict == Verdict::certified_zero ? ok : negative;
    }
    const Report r = which == "pure" ? check_pure(in, g) : check_psd(in, g);
    if(g.structured())
        out << structured_report(r);
    else
        print_report(out, r);
    return r.verdict == which ? ok : negative;
}

int cmd_gate(const std::string &file, const std::string &word, const std::string &out_file, const GlobalOptions &g,
             std::ostream &out) {
    const Input in = load_input(file, g);
    const auto ops = parse_gate_word(word);
    const DensityOperator rho = apply_gate_word(to_state(in, g), ops);
    const std::string doc = matrix_document(rho, in.has_partition_field);
    if(out_file.empty())
        out << doc;
    else
        write_file(out_file, doc);
    return ok;
}

int cmd_oracle(const std::string &file, const GridSpec &grid, const GlobalOptions &g, std::ostream &out) {
    const Input in = load_input(file, g);
    const DensityOperator rho = to_state(in, g);
    if(rho.dim() != 4) throw DimensionError("oracle needs a 4x4 state");
    const DiscordEstimate est = discord_estimate(rho, g.side(), grid);
    if(g.structured()) {
        out << "{\n  \"discord\": " << format_real(est.value) << ",\n  \"raw\": " << format_real(est.raw_value)
            << ",\n  \"measured_side\": " << json_string(to_string(g.side())) << ",\n  \"argmin\": {\"theta\": "
            << format_real(est.argmin.theta) << ", \"phi\": " << format_real(est.argmin.phi)
            << "},\n  \"grid\": {\"n_theta\": " << grid.n_theta << ", \"n_phi\": " << grid.n_phi
            << ", \"passes\": " << grid.passes << "}\n}\n";
    } else {
        out << std::left << std::setw(16) << "discord" << text_real(est.value) << '\n'
            << std::setw(16) << "raw" << text_real(est.raw_value) << '\n'
            << std::setw(16) << "measured side" << to_string(g.side()) << '\n'
            << std::setw(16) << "theta" << text_real(est.argmin.theta) << '\n'
            << std::setw(16) << "phi" << text_real(est.argmin.phi) << '\n'
            << std::setw(16) << "grid" << grid.n_theta << " x " << grid.n_phi << ", " << grid.passes << " passes\n";
    }
    return est.value <= kOracleZero ? ok : negative;
}

} // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Density operators of weighted graphs and zero-discord certificates", "gdisc"};
    app.require_subcommand(1);
    GlobalOptions g;
    app.add_option("--tol", g.tol, "absolute and relative tolerance")->check(CLI::PositiveNumber)->capture_default_str();
    app.add_option("--format", g.format, "output format")->check(CLI::IsMember({"text", "structured"}))
        ->capture_default_str();
    app.add_option("--measured", g.measured, "measured subsystem")->check(CLI::IsMember({"A", "B"}))
        ->capture_default_str();
    app.add_option("--convention", g.convention, "Laplacian convention for graph inputs")
        ->check(CLI::IsMember({"auto", "magnitude", "signed"}))
        ->capture_default_str();
    app.add_option("--partition", g.partition, "qubit split P,Q (default 1,n-1)");

    std::string file, out_file, which, word;
    bool audit = false;
    GridSpec grid;

    auto *build = app.add_subcommand("build", "build the density operator of a graph");
    build->fallthrough();
    build->add_option("graph", file, "graph document")->required();
    build->add_option("-o,--out", out_file, "write the matrix document here");

    auto *check = app.add_subcommand("check", "run a check battery");
    check->fallthrough();
    check->add_option("which", which, "pure, psd or discord")->required()->check(CLI::IsMember({"pure", "psd", "discord"}));
    check->add_option("file", file, "graph or matrix document")->required();
    check->add_flag("--audit", audit, "add oracle discord values for two-qubit states");

    auto *gate = app.add_subcommand("gate", "apply a gate word");
    gate->fallthrough();
    gate->add_option("file", file, "graph or matrix document")->required();
    gate->add_option("word", word, "e.g. H(0),CX(0,1),partial(q=1)")->required();
    gate->add_option("-o,--out", out_file, "write the matrix document here");

    auto *oracle = app.add_subcommand("oracle", "brute-force two-qubit discord");
    oracle->fallthrough();
    oracle->add_option("file", file, "graph or matrix document")->required();
    oracle->add_option("--n-theta", grid.n_theta, "polar grid points")->check(CLI::Range(2, 1 << 14))->capture_default_str();
    oracle->add_option("--n-phi", grid.n_phi, "azimuthal grid points")->check(CLI::Range(1, 1 << 14))->capture_default_str();
    oracle->add_option("--passes", grid.passes, "refinement passes")->check(CLI::Range(0, 32))->capture_default_str();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch(const CLI::CallForHelp &e) {
        app.exit(e, out, err);
        return ok;
    } catch(const CLI::ParseError &e) {
        app.exit(e, out, err);
        return input_error;
    }

    try {
        if(*build) return cmd_build(file, out_file, g, out);
        if(*check) return cmd_check(which, file, audit, g, out);
        if(*gate) return cmd_gate(file, word, out_file, g, out);
        return cmd_oracle(file, grid, g, out);
    } catch(const ValidityError &e) {
        err << "error: " << e.what() << '\n';
        return validity_error;
    } catch(const NormalizationError &e) {
        err << "error: " << e.what() << '\n';
        return validity_error;
    } catch(const Error &e) {
        err << "error: " << e.what() << '\n';
        return input_error;
    }
}

} // namespace gd::cli
