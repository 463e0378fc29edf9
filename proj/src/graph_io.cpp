#include <sstream>

#include "json.hpp"

#include "graphdiscord/errors.hpp"
#include "graphdiscord/graph.hpp"
#include "text_format.hpp"

namespace gd {

namespace {

using json = nlohmann::json;

const json &field(const json &obj, const char *name, const std::string &where) {
    auto it = obj.find(name);
    if(it == obj.end()) throw ParseError(where + ": missing field '" + name + "'");
    return *it;
}

long long integer_field(const json &obj, const char *name, const std::string &where) {
    const auto &v = field(obj, name, where);
    if(!v.is_number_integer()) throw ParseError(where + ": field '" + name + "' must be an integer");
    return v.get<long long>();
}

double finite_number(const json &v, const std::string &where) {
    if(!v.is_number()) throw ParseError(where + ": expected a number");
    const double x = v.get<double>();
    if(!std::isfinite(x)) throw ParseError(where + ": number is not finite");
    return x;
}

// Accepts [re, im] or a bare real number.
Complex complex_value(const json &v, const std::string &where) {
    if(v.is_array()) {
        if(v.size() != 2) throw ParseError(where + ": expected [re, im]");
        return {finite_number(v[0], where + "[0]"), finite_number(v[1], where + "[1]")};
    }
    return {finite_number(v, where), 0.0};
}

Vertex vertex_value(const json &obj, const char *name, const std::string &where) {
    const auto raw = integer_field(obj, name, where);
    if(raw < 0 || raw >= (1LL << 12)) throw ParseError(where + ": vertex index '" + name + "' out of range");
    return static_cast<Vertex>(raw);
}

} // namespace

WeightedGraph parse_graph(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch(const json::parse_error &e) {
        throw ParseError(std::string("graph document: ") + e.what());
    }
    if(!doc.is_object()) throw ParseError("graph document: top level must be an object");

    const auto qubits = integer_field(doc, "qubits", "graph");
    if(qubits < 1 || qubits > 12) throw ParseError("graph: 'qubits' must be in 1..12");

    Partition part = default_partition(static_cast<int>(qubits));
    if(auto it = doc.find("partition"); it != doc.end()) {
        if(!it->is_array() || it->size() != 2 || !(*it)[0].is_number_integer() || !(*it)[1].is_number_integer())
            throw ParseError("graph: 'partition' must be [p, q]");
        part = {(*it)[0].get<int>(), (*it)[1].get<int>()};
        if(part.p < 0 || part.q < 0 || part.qubits() != qubits)
            throw ParseError("graph: 'partition' must be nonnegative and sum to 'qubits'");
    }

    WeightedGraph g(part);
    if(auto it = doc.find("convention"); it != doc.end()) {
        if(!it->is_string()) throw ParseError("graph: 'convention' must be a string");
        const auto s = it->get<std::string>();
        if(s == "magnitude")
            g.set_preferred_convention(LaplacianConvention::magnitude);
        else if(s == "signed")
            g.set_preferred_convention(LaplacianConvention::signed_);
        else if(s != "auto")
            throw ParseError("graph: 'convention' must be auto, magnitude or signed");
    }

    if(auto it = doc.find("edges"); it != doc.end()) {
        if(!it->is_array()) throw ParseError("graph: 'edges' must be an array");
        for(std::size_t k = 0; k < it->size(); ++k) {
            const std::string where = "graph: edges[" + std::to_string(k) + "]";
            const auto &e = (*it)[k];
            if(!e.is_object()) throw ParseError(where + ": expected an object");
            const Vertex u = vertex_value(e, "u", where);
            const Vertex v = vertex_value(e, "v", where);
            const Complex w = complex_value(field(e, "w", where), where + ".w");
            try {
                g.add_edge(u, v, w);
            } catch(const Error &err) {
                throw ParseError(where + ": " + err.what());
            }
        }
    }

    if(auto it = doc.find("loops"); it != doc.end()) {
        if(!it->is_array()) throw ParseError("graph: 'loops' must be an array");
        for(std::size_t k = 0; k < it->size(); ++k) {
            const std::string where = "graph: loops[" + std::to_string(k) + "]";
            const auto &l = (*it)[k];
            if(!l.is_object()) throw ParseError(where + ": expected an object");
            const Vertex v = vertex_value(l, "v", where);
            const double w = finite_number(field(l, "w", where), where + ".w");
            try {
                g.set_loop(v, w);
            } catch(const Error &err) {
                throw ParseError(where + ": " + err.what());
            }
        }
    }
    return g;
}

std::string serialize_graph(const WeightedGraph &g) {
    using detail::format_complex_pair;
    using detail::format_real;
    std::ostringstream os;
    os << "{\n";
    os << "  \"qubits\": " << g.qubits() << ",\n";
    os << "  \"partition\": [" << g.partition().p << ", " << g.partition().q << "],\n";
    os << "  \"convention\": \""
       << (g.preferred_convention() ? to_string(*g.preferred_convention()) : std::string_view("auto")) << "\",\n";
    os << "  \"edges\": [";
    for(std::size_t k = 0; k < g.edges().size(); ++k) {
        const auto &e = g.edges()[k];
        os << (k == 0 ? "\n" : ",\n") << "    {\"u\": " << e.u << ", \"v\": " << e.v
           << ", \"w\": " << format_complex_pair(e.w) << "}";
    }
    os << (g.edges().empty() ? "],\n" : "\n  ],\n");
    os << "  \"loops\": [";
    bool first = true;
    for(const auto &[v, w] : g.loops()) {
        os << (first ? "\n" : ",\n") << "    {\"v\": " << v << ", \"w\": " << format_real(w) << "}";
        first = false;
    }
    os << (g.loops().empty() ? "]\n" : "\n  ]\n");
    os << "}\n";
    return os.str();
}

} // namespace gd
