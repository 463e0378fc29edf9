#include "graphdiscord/gates.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <regex>

#include "graphdiscord/errors.hpp"

namespace gd {

namespace {

constexpr Complex I_{0.0, 1.0};

int arity(GateKind k) {
    switch(k) {
    case GateKind::CX:
    case GateKind::CZ:
    case GateKind::SWAP: return 2;
    case GateKind::explicit_matrix: return -1;
    default: return 1;
    }
}

// Bit of qubit t (0 = most significant) in basis index x of an n-qubit register.
std::size_t qubit_bit(std::size_t x, int t, int n) { return (x >> (n - 1 - t)) & 1U; }

} // namespace

ComplexMatrix gate_kernel(GateKind kind) {
    ComplexMatrix m;
    switch(kind) {
    case GateKind::I: m = ComplexMatrix::Identity(2, 2); break;
    case GateKind::X:
        m.resize(2, 2);
        m << 0, 1, 1, 0;
        break;
    case GateKind::Y:
        m.resize(2, 2);
        m << 0, -I_, I_, 0;
        break;
    case GateKind::Z:
        m.resize(2, 2);
        m << 1, 0, 0, -1;
        break;
    case GateKind::H:
        m.resize(2, 2);
        m << 1, 1, 1, -1;
        m /= std::sqrt(2.0);
        break;
    case GateKind::CX:
        m = ComplexMatrix::Identity(4, 4);
        m.block(2, 2, 2, 2) = gate_kernel(GateKind::X);
        break;
    case GateKind::CZ:
        m = ComplexMatrix::Identity(4, 4);
        m(3, 3) = -1;
        break;
    case GateKind::SWAP:
        m = ComplexMatrix::Zero(4, 4);
        m(0, 0) = m(1, 2) = m(2, 1) = m(3, 3) = 1;
        break;
    case GateKind::explicit_matrix: throw ContractViolation("explicit gates carry their own matrix");
    }
    return m;
}

ComplexMatrix gate_matrix(const GateSpec &spec, int n_qubits, const Tolerance &tol) {
    if(n_qubits < 1 || n_qubits > 12) throw DimensionError("gate_matrix: register must have 1..12 qubits");
    const auto &t = spec.targets;
    const int k = static_cast<int>(t.size());
    if(k == 0) throw ContractViolation("gate has no targets");
    for(int a = 0; a < k; ++a) {
        if(t[a] < 0 || t[a] >= n_qubits)
            throw ContractViolation("gate target " + std::to_string(t[a]) + " outside 0.." + std::to_string(n_qubits - 1));
        for(int b = a + 1; b < k; ++b)
            if(t[a] == t[b]) throw ContractViolation("gate targets must be distinct");
    }

    ComplexMatrix kernel;
    if(spec.kind == GateKind::explicit_matrix) {
        if(!spec.matrix) throw ContractViolation("explicit gate without a matrix");
        kernel = *spec.matrix;
        const auto d = Eigen::Index{1} << k;
        if(kernel.rows() != d || kernel.cols() != d)
            throw ContractViolation("explicit gate matrix does not match its " + std::to_string(k) + " targets");
        if(maxnorm(kernel * kernel.adjoint() - ComplexMatrix::Identity(d, d)) > tol.threshold(1.0))
            throw ContractViolation("explicit gate matrix is not unitary");
    } else {
        if(arity(spec.kind) != k)
            throw ContractViolation("gate expects " + std::to_string(arity(spec.kind)) + " target(s), got " +
                                    std::to_string(k));
        kernel = gate_kernel(spec.kind);
    }

    const std::size_t dim = std::size_t{1} << n_qubits;
    std::size_t target_bits = 0;
    for(int q : t) target_bits |= std::size_t{1} << (n_qubits - 1 - q);
    const auto sub_index = [&](std::size_t x) {
        std::size_t s = 0;
        for(int q : t) s = (s << 1) | qubit_bit(x, q, n_qubits);
        return s;
    };

    ComplexMatrix full = ComplexMatrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    for(std::size_t r = 0; r < dim; ++r)
        for(std::size_t c = 0; c < dim; ++c) {
            if((r & ~target_bits) != (c & ~target_bits)) continue;
            full(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
                kernel(static_cast<Eigen::Index>(sub_index(r)), static_cast<Eigen::Index>(sub_index(c)));
        }
    return full;
}

DensityOperator apply_gate(const DensityOperator &rho, const GateSpec &spec) {
    const ComplexMatrix u = gate_matrix(spec, rho.qubits());
    ComplexMatrix out = u * rho.matrix() * u.adjoint();
    if(rho.convention()) return DensityOperator(std::move(out), rho.partition(), *rho.convention());
    return DensityOperator(std::move(out), rho.partition());
}

ComplexMatrix apply_partial_gate(const ComplexMatrix &rho, int untouched) {
    if(rho.rows() != rho.cols()) throw DimensionError("apply_partial_gate: matrix must be square");
    const int n = qubit_count(static_cast<std::size_t>(rho.rows()));
    if(untouched < 0 || untouched >= n)
        throw ContractViolation("partial gate needs 0 <= q < " + std::to_string(n) + ", got " + std::to_string(untouched));
    const int touched = n - untouched;
    const auto dim = static_cast<std::size_t>(rho.rows());
    ComplexMatrix out(rho.rows(), rho.cols());
    for(std::size_t i = 0; i < dim; ++i)
        for(std::size_t j = 0; j < dim; ++j) {
            const std::size_t m = partial_mask(i, j, touched);
            out(static_cast<Eigen::Index>(i ^ m), static_cast<Eigen::Index>(j ^ m)) =
                rho(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
        }
    return out;
}

DensityOperator apply_partial_gate(const DensityOperator &rho, int untouched) {
    ComplexMatrix out = apply_partial_gate(rho.matrix(), untouched);
    if(rho.convention()) return DensityOperator(std::move(out), rho.partition(), *rho.convention());
    return DensityOperator(std::move(out), rho.partition());
}

WeightedGraph apply_partial_gate_graph(const WeightedGraph &g, int untouched, LaplacianConvention conv) {
    const int n = g.qubits();
    if(untouched < 0 || untouched >= n)
        throw ContractViolation("partial gate needs 0 <= q < " + std::to_string(n) + ", got " + std::to_string(untouched));
    const int touched = n - untouched;

    const ComplexMatrix before = laplacian(g, conv);
    WeightedGraph out(g.partition());
    out.set_preferred_convention(g.preferred_convention());
    for(const auto &e : g.edges()) {
        const auto m = static_cast<Vertex>(partial_mask(e.u, e.v, touched));
        // add_edge conjugates when the image pair comes out reversed, so L(u^m, v^m) = w.
        out.add_edge(e.u ^ m, e.v ^ m, e.w);
    }

    const ComplexMatrix after = laplacian(out, conv);
    for(Vertex v = 0; v < g.vertex_count(); ++v) {
        const double loop = before(v, v).real() - after(v, v).real();
        if(loop != 0.0 || g.loops().count(v) != 0) out.set_loop(v, loop);
    }
    return out;
}

WeightedGraph apply_partial_gate_graph(const WeightedGraph &g, int untouched) {
    return apply_partial_gate_graph(g, untouched, effective_convention(g));
}

double conj_partial_residual(const ComplexMatrix &rho, int untouched) {
    return maxnorm(apply_partial_gate(rho, untouched).conjugate() - rho);
}

bool conj_partial_fixed(const ComplexMatrix &rho, int untouched, const Tolerance &tol) {
    return conj_partial_residual(rho, untouched) <= tol.threshold(maxnorm(rho));
}

bool conj_partial_fixed(const DensityOperator &rho, int untouched, const Tolerance &tol) {
    return conj_partial_fixed(rho.matrix(), untouched, tol);
}

std::vector<GateOp> parse_gate_word(std::string_view word) {
    static const std::regex term_re(R"(\s*([A-Za-z]+)\s*\(\s*([^()]*?)\s*\)\s*)");
    static const std::regex partial_arg_re(R"(q\s*=\s*(\d+))");
    static const std::regex int_re(R"(\s*(\d+)\s*)");

    std::vector<GateOp> ops;
    const std::string text(word);
    std::size_t pos = 0;
    while(pos <= text.size()) {
        // A term ends at the first ',' outside parentheses.
        std::size_t end = pos;
        int depth = 0;
        while(end < text.size() && !(text[end] == ',' && depth == 0)) {
            if(text[end] == '(') ++depth;
            if(text[end] == ')') --depth;
            ++end;
        }
        const std::string term = text.substr(pos, end - pos);
        std::smatch m;
        if(!std::regex_match(term, m, term_re)) throw ParseError("gate word: cannot parse term '" + term + "'");

        std::string name = m[1].str();
        std::transform(name.begin(), name.end(), name.begin(), [](unsigned char c) { return std::toupper(c); });
        const std::string args = m[2].str();

        if(name == "PARTIAL") {
            std::smatch pm;
            if(!std::regex_match(args, pm, partial_arg_re))
                throw ParseError("gate word: partial expects q=<int>, got '" + args + "'");
            ops.emplace_back(PartialGateSpec{std::stoi(pm[1].str())});
        } else {
            static const std::pair<const char *, GateKind> names[] = {
                {"I", GateKind::I},   {"X", GateKind::X},   {"Y", GateKind::Y},   {"Z", GateKind::Z},
                {"H", GateKind::H},   {"CX", GateKind::CX}, {"CNOT", GateKind::CX}, {"CZ", GateKind::CZ},
                {"SWAP", GateKind::SWAP}};
            auto it = std::find_if(std::begin(names), std::end(names), [&](const auto &p) { return name == p.first; });
            if(it == std::end(names)) throw ParseError("gate word: unknown gate '" + m[1].str() + "'");
            GateSpec spec{it->second, {}, std::nullopt};
            std::size_t apos = 0;
            while(apos <= args.size()) {
                const auto comma = std::min(args.find(',', apos), args.size());
                const std::string a = args.substr(apos, comma - apos);
                std::smatch im;
                if(!std::regex_match(a, im, int_re)) throw ParseError("gate word: bad target '" + a + "' in " + term);
                spec.targets.push_back(std::stoi(im[1].str()));
                apos = comma + 1;
            }
            if(static_cast<int>(spec.targets.size()) != arity(spec.kind))
                throw ParseError("gate word: " + name + " expects " + std::to_string(arity(spec.kind)) + " target(s)");
            ops.emplace_back(std::move(spec));
        }
        if(end >= text.size()) break;
        pos = end + 1;
    }
    return ops;
}

DensityOperator apply_gate_word(const DensityOperator &rho, const std::vector<GateOp> &ops) {
    DensityOperator cur = rho;
    for(const auto &op : ops) {
        if(const auto *g = std::get_if<GateSpec>(&op))
            cur = apply_gate(cur, *g);
        else
            cur = apply_partial_gate(cur, std::get<PartialGateSpec>(op).untouched);
    }
    return cur;
}

} // namespace gd
