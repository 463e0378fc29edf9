#include "graphdiscord/matrix_io.hpp"

#include <cmath>
#include <sstream>

#include "json.hpp"

#include "graphdiscord/errors.hpp"
#include "text_format.hpp"

namespace gd {

MatrixDocument parse_matrix(std::string_view text) {
    using json = nlohmann::json;
    json doc;
    try {
        doc = json::parse(text);
    } catch(const json::parse_error &e) {
        throw ParseError(std::string("matrix document: ") + e.what());
    }
    if(!doc.is_object()) throw ParseError("matrix document: top level must be an object");

    auto dim_it = doc.find("dim");
    if(dim_it == doc.end() || !dim_it->is_number_integer()) throw ParseError("matrix: 'dim' must be an integer");
    const auto dim = dim_it->get<long long>();
    if(dim < 1 || dim > 4096) throw ParseError("matrix: 'dim' must be in 1..4096");

    auto ent_it = doc.find("entries");
    if(ent_it == doc.end() || !ent_it->is_array()) throw ParseError("matrix: 'entries' must be an array");
    if(static_cast<long long>(ent_it->size()) != dim * dim)
        throw ParseError("matrix: 'entries' has " + std::to_string(ent_it->size()) + " values, expected " +
                         std::to_string(dim * dim));

    MatrixDocument out;
    out.matrix.resize(dim, dim);
    for(long long k = 0; k < dim * dim; ++k) {
        const auto &v = (*ent_it)[static_cast<std::size_t>(k)];
        const std::string where = "matrix: entries[" + std::to_string(k) + "]";
        Complex z;
        if(v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number())
            z = {v[0].get<double>(), v[1].get<double>()};
        else if(v.is_number())
            z = {v.get<double>(), 0.0};
        else
            throw ParseError(where + ": expected [re, im]");
        if(!std::isfinite(z.real()) || !std::isfinite(z.imag())) throw ParseError(where + ": not finite");
        out.matrix(k / dim, k % dim) = z;
    }

    if(auto it = doc.find("partition"); it != doc.end()) {
        if(!it->is_array() || it->size() != 2 || !(*it)[0].is_number_integer() || !(*it)[1].is_number_integer())
            throw ParseError("matrix: 'partition' must be [p, q]");
        Partition p{(*it)[0].get<int>(), (*it)[1].get<int>()};
        if(p.p < 0 || p.q < 0 || p.qubits() > 12 || static_cast<long long>(p.dim()) != dim)
            throw ParseError("matrix: 'partition' does not match 'dim'");
        out.partition = p;
    }
    return out;
}

std::string serialize_matrix(const ComplexMatrix &m, std::optional<Partition> partition) {
    if(m.rows() != m.cols()) throw DimensionError("serialize_matrix: matrix must be square");
    std::ostringstream os;
    os << "{\n  \"dim\": " << m.rows() << ",\n";
    if(partition) os << "  \"partition\": [" << partition->p << ", " << partition->q << "],\n";
    os << "  \"entries\": [\n";
    for(Eigen::Index i = 0; i < m.rows(); ++i) {
        os << "    ";
        for(Eigen::Index j = 0; j < m.cols(); ++j) {
            os << detail::format_complex_pair(m(i, j));
            const bool last = i + 1 == m.rows() && j + 1 == m.cols();
            if(!last) os << (j + 1 == m.cols() ? "," : ", ");
        }
        os << "\n";
    }
    os << "  ]\n}\n";
    return os.str();
}

} // namespace gd
