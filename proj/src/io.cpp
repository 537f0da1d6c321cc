#include "tnz/io.hpp"

#include "tnz/error.hpp"

#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

namespace tnz
{

using Json = nlohmann::ordered_json;

namespace
{

[[noreturn]] void fail(const std::string& what)
{
    throw Error(ErrorKind::ParseError, what);
}

Json parse_json(std::string_view text)
{
    try {
        return Json::parse(text.begin(), text.end());
    } catch (const nlohmann::json::exception& e) {
        fail(std::string("invalid JSON: ") + e.what());
    }
}

const Json& field(const Json& obj, const char* name)
{
    if (!obj.is_object() || !obj.contains(name)) {
        fail(std::string("missing field \"") + name + "\"");
    }
    return obj.at(name);
}

int as_int(const Json& j, const std::string& what)
{
    if (!j.is_number_integer()) {
        fail(what + " must be an integer");
    }
    const auto v = j.get<std::int64_t>();
    if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max()) {
        fail(what + " is out of range");
    }
    return static_cast<int>(v);
}

int parse_int(std::string_view text, const std::string& what)
{
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) {
        text.remove_prefix(1);
    }
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) {
        text.remove_suffix(1);
    }
    if (!text.empty() && text.front() == '+') {
        text.remove_prefix(1);
    }
    int v = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
        fail(what + ": \"" + std::string(text) + "\" is not an integer");
    }
    return v;
}

Rational as_rational(const Json& j, const std::string& what)
{
    if (j.is_string()) {
        return parse_rational(j.get<std::string>());
    }
    if (j.is_number_integer()) {
        return Rational(mpz_class(std::to_string(j.get<std::int64_t>())));
    }
    fail(what + " must be a rational string");
}

Scalar as_scalar(const Json& j, const std::string& what)
{
    if (j.is_array()) {
        if (j.size() != 2) {
            fail(what + " must be a [re, im] pair");
        }
        return Scalar(as_rational(j[0], what), as_rational(j[1], what));
    }
    return Scalar(as_rational(j, what));
}

Json scalar_json(const Scalar& s)
{
    return Json::array({format_rational(s.real()), format_rational(s.imag())});
}

std::vector<std::string_view> split(std::string_view text, char sep)
{
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = text.find(sep, start);
        out.push_back(text.substr(start, pos - start));
        if (pos == std::string_view::npos) {
            return out;
        }
        start = pos + 1;
    }
}

SlotRef parse_slot(std::string_view key)
{
    if (key.size() < 5 || key.front() != '(' || key.back() != ')') {
        fail("edge key \"" + std::string(key) + "\" must look like (node,slot)");
    }
    const auto parts = split(key.substr(1, key.size() - 2), ',');
    if (parts.size() != 2) {
        fail("edge key \"" + std::string(key) + "\" must look like (node,slot)");
    }
    return {parse_int(parts[0], "node id"), parse_int(parts[1], "slot") - 1};
}

Matrix as_matrix(const Json& j, Eigen::Index dim, const std::string& what)
{
    if (!j.is_array() || j.size() != static_cast<std::size_t>(dim * dim)) {
        fail(what + " must list " + std::to_string(dim * dim) + " entries");
    }
    Matrix m(dim, dim);
    for (Eigen::Index r = 0; r < dim; ++r) {
        for (Eigen::Index c = 0; c < dim; ++c) {
            m(r, c) = as_scalar(j[static_cast<std::size_t>(r * dim + c)], what);
        }
    }
    return m;
}

Json matrix_json(const Matrix& m)
{
    Json out = Json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            out.push_back(scalar_json(m(r, c)));
        }
    }
    return out;
}

Eigen::Index local_dim(int D, std::size_t k)
{
    Eigen::Index dim = 1;
    for (std::size_t i = 0; i < k; ++i) {
        if (dim > (Eigen::Index{1} << 20) / D) {
            fail("term dimension too large");
        }
        dim *= D;
    }
    return dim;
}

bool has_object(const Json& j)
{
    if (j.is_object()) {
        return true;
    }
    return j.is_array() && std::any_of(j.begin(), j.end(), [](const Json& e) { return has_object(e); });
}

/// Objects one member per line; arrays without objects on one line.
void pretty(const Json& j, int indent, std::string& out)
{
    const std::string pad(static_cast<std::size_t>(2 * indent), ' ');
    const std::string inner(static_cast<std::size_t>(2 * indent + 2), ' ');
    if (!has_object(j)) {
        out += j.dump();
        return;
    }
    const bool obj = j.is_object();
    if (j.empty()) {
        out += obj ? "{}" : "[]";
        return;
    }
    out += obj ? "{\n" : "[\n";
    bool first = true;
    for (auto it = j.begin(); it != j.end(); ++it) {
        out += first ? "" : ",\n";
        first = false;
        out += inner;
        if (obj) {
            out += Json(it.key()).dump() + ": ";
        }
        pretty(*it, indent + 1, out);
    }
    out += "\n" + pad + (obj ? "}" : "]");
}

std::string render(const Json& j)
{
    std::string out;
    pretty(j, 0, out);
    return out + "\n";
}

} // namespace

std::string format_slot(SlotRef s)
{
    return "(" + std::to_string(s.node) + "," + std::to_string(s.slot + 1) + ")";
}

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        fail("cannot open " + path);
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

TensorNetwork read_network(std::string_view text)
{
    const Json doc = parse_json(text);
    TensorNetwork network;
    const Json& nodes = field(doc, "nodes");
    if (!nodes.is_array()) {
        fail("\"nodes\" must be a list");
    }
    for (const Json& n : nodes) {
        const int id = as_int(field(n, "id"), "node id");
        const Json& dims_json = field(n, "dims");
        if (!dims_json.is_array()) {
            fail("\"dims\" must be a list");
        }
        std::vector<int> dims;
        for (const Json& d : dims_json) {
            dims.push_back(as_int(d, "dimension"));
        }
        TensorNode node(id, dims);
        if (n.contains("entries")) {
            const Json& entries = n.at("entries");
            if (!entries.is_object()) {
                fail("\"entries\" must be an object");
            }
            for (const auto& [key, value] : entries.items()) {
                MultiIndex idx;
                if (!key.empty()) {
                    for (auto part : split(key, ',')) {
                        idx.push_back(parse_int(part, "index") - 1);
                    }
                }
                if (idx.size() != dims.size() || !node.in_range(idx)) {
                    throw Error(ErrorKind::IndexOutOfRange,
                                "entry \"" + key + "\" of node " + std::to_string(id) + " is out of range");
                }
                if (node.entries().contains(idx)) {
                    fail("entry \"" + key + "\" of node " + std::to_string(id) + " is repeated");
                }
                node.set(idx, as_scalar(value, "entry"));
            }
        }
        network.add_node(std::move(node));
    }
    if (doc.contains("edges")) {
        const Json& edges = doc.at("edges");
        if (!edges.is_array()) {
            fail("\"edges\" must be a list");
        }
        for (const Json& e : edges) {
            if (!e.is_array() || e.size() != 4) {
                fail("each edge must be [nodeA, slotA, nodeB, slotB]");
            }
            network.add_edge({as_int(e[0], "node id"), as_int(e[1], "slot") - 1},
                             {as_int(e[2], "node id"), as_int(e[3], "slot") - 1});
        }
    }
    if (doc.contains("global_scalar")) {
        network.set_global_scalar(as_scalar(doc.at("global_scalar"), "global_scalar"));
    }
    validate_network(network);
    return network;
}

std::string write_network(const TensorNetwork& network)
{
    Json doc;
    Json nodes = Json::array();
    for (const auto& n : network.nodes()) {
        Json node;
        node["id"] = n.id();
        node["dims"] = n.dims();
        Json entries = Json::object();
        for (const auto& [idx, value] : n.entries()) {
            std::string key;
            for (std::size_t i = 0; i < idx.size(); ++i) {
                key += (i ? "," : "") + std::to_string(idx[i] + 1);
            }
            entries[key] = scalar_json(value);
        }
        node["entries"] = std::move(entries);
        nodes.push_back(std::move(node));
    }
    doc["nodes"] = std::move(nodes);
    Json edges = Json::array();
    for (const auto& e : network.edges()) {
        edges.push_back({e.a.node, e.a.slot + 1, e.b.node, e.b.slot + 1});
    }
    doc["edges"] = std::move(edges);
    doc["global_scalar"] = scalar_json(network.global_scalar());
    return render(doc);
}

WitnessFile read_witness(std::string_view text, const TensorNetwork& network)
{
    const Json doc = parse_json(text);
    if (!doc.is_object()) {
        fail("witness must be an object");
    }
    WitnessFile out;
    if (doc.contains("x")) {
        for (const auto& [key, value] : doc.at("x").items()) {
            out.x[parse_slot(key)] = as_int(value, "input value") - 1;
        }
    }
    if (doc.contains("labeling")) {
        Labeling labeling;
        labeling.values.assign(network.edge_count(), -1);
        for (const auto& [key, value] : doc.at("labeling").items()) {
            const int e = parse_int(key, "edge index") - 1;
            if (e < 0 || static_cast<std::size_t>(e) >= network.edge_count()) {
                throw Error(ErrorKind::InvalidWitness, "labeling names unknown edge " + key);
            }
            labeling.values[static_cast<std::size_t>(e)] = as_int(value, "label") - 1;
        }
        out.labeling = std::move(labeling);
    }
    if (doc.contains("vectors")) {
        for (const auto& [key, value] : doc.at("vectors").items()) {
            if (!value.is_array()) {
                fail("vector for " + key + " must be a list");
            }
            std::vector<Scalar> amplitudes;
            for (const Json& a : value) {
                amplitudes.push_back(as_scalar(a, "amplitude"));
            }
            out.vectors[parse_slot(key)] = std::move(amplitudes);
        }
    }
    return out;
}

std::string write_witness(const NonNegWitness& w)
{
    Json doc;
    Json x = Json::object();
    for (const auto& [s, v] : w.x) {
        x[format_slot(s)] = v + 1;
    }
    doc["x"] = std::move(x);
    Json labeling = Json::object();
    for (std::size_t e = 0; e < w.labeling.values.size(); ++e) {
        labeling[std::to_string(e + 1)] = w.labeling.values[e] + 1;
    }
    doc["labeling"] = std::move(labeling);
    return render(doc);
}

Cnf2 read_dimacs(std::string_view text)
{
    Cnf2 formula;
    bool have_header = false;
    std::size_t declared_clauses = 0;
    std::vector<int> pending;
    std::istringstream in{std::string(text)};
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok) || tok == "c" || tok[0] == 'c' || tok[0] == '%') {
            continue;
        }
        if (tok == "p") {
            std::string kind;
            long vars = -1, clauses = -1;
            if (have_header || !(ls >> kind >> vars >> clauses) || kind != "cnf" || vars < 0 || clauses < 0) {
                fail("line " + std::to_string(line_no) + ": bad problem line");
            }
            have_header = true;
            formula.num_vars = static_cast<int>(vars);
            declared_clauses = static_cast<std::size_t>(clauses);
            continue;
        }
        if (!have_header) {
            fail("line " + std::to_string(line_no) + ": clause before the problem line");
        }
        do {
            const int lit = parse_int(tok, "line " + std::to_string(line_no));
            if (lit != 0) {
                if (std::abs(lit) > formula.num_vars) {
                    throw Error(ErrorKind::InvalidFormula,
                                "line " + std::to_string(line_no) + ": literal " + tok + " exceeds variable count");
                }
                pending.push_back(lit);
                continue;
            }
            if (pending.size() != 2) {
                throw Error(ErrorKind::InvalidFormula, "line " + std::to_string(line_no) + ": clause has " +
                                                           std::to_string(pending.size()) +
                                                           " literals; only 2-literal clauses are supported");
            }
            auto lit_of = [](int l) { return Literal{std::abs(l) - 1, l > 0}; };
            formula.clauses.push_back({lit_of(pending[0]), lit_of(pending[1])});
            pending.clear();
        } while (ls >> tok);
    }
    if (!have_header) {
        fail("missing problem line");
    }
    if (!pending.empty()) {
        fail("last clause is not terminated by 0");
    }
    if (formula.clauses.size() != declared_clauses) {
        fail("problem line declares " + std::to_string(declared_clauses) + " clauses, found " +
             std::to_string(formula.clauses.size()));
    }
    return formula;
}

std::string write_dimacs(const Cnf2& formula)
{
    std::ostringstream out;
    out << "p cnf " << formula.num_vars << ' ' << formula.clauses.size() << '\n';
    auto lit = [](const Literal& l) { return (l.positive ? 1 : -1) * (l.var + 1); };
    for (const auto& c : formula.clauses) {
        out << lit(c.first) << ' ' << lit(c.second) << " 0\n";
    }
    return out.str();
}

SimpleGraph read_edge_list(std::string_view text)
{
    SimpleGraph graph;
    std::istringstream in{std::string(text)};
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream ls(line);
        std::string a, b, extra;
        if (!(ls >> a) || a[0] == '#' || a[0] == 'c') {
            continue;
        }
        if (!(ls >> b) || (ls >> extra)) {
            fail("line " + std::to_string(line_no) + ": expected \"u v\"");
        }
        const std::string where = "line " + std::to_string(line_no);
        const int u = parse_int(a, where);
        const int v = parse_int(b, where);
        if (u < 1 || v < 1) {
            throw Error(ErrorKind::InvalidGraph, where + ": vertices are numbered from 1");
        }
        graph.vertices = std::max({graph.vertices, u, v});
        graph.edges.emplace_back(u - 1, v - 1);
    }
    validate_graph(graph);
    return graph;
}

HamiltonianFile read_hamiltonian(std::string_view text)
{
    const Json doc = parse_json(text);
    HamiltonianFile out;
    HamiltonianInstance& h = out.instance;
    h.n = as_int(field(doc, "n"), "n");
    h.D = doc.contains("D") ? as_int(doc.at("D"), "D") : 2;
    if (h.n < 0 || h.D < 1) {
        fail("need n >= 0 and D >= 1");
    }
    h.alpha = doc.contains("alpha") ? as_rational(doc.at("alpha"), "alpha") : Rational(0);
    h.beta = doc.contains("beta") ? as_rational(doc.at("beta"), "beta") : Rational(0);
    const Json& terms = field(doc, "terms");
    if (!terms.is_array()) {
        fail("\"terms\" must be a list");
    }
    for (const Json& t : terms) {
        LocalTerm term;
        const Json& support = field(t, "support");
        if (!support.is_array()) {
            fail("\"support\" must be a list");
        }
        for (const Json& q : support) {
            term.support.push_back(as_int(q, "support qudit") - 1);
        }
        term.matrix = as_matrix(field(t, "matrix"), local_dim(h.D, term.support.size()), "term matrix");
        h.terms.push_back(std::move(term));
    }
    validate_instance(h);
    if (doc.contains("guesses")) {
        std::vector<ProjectorGuess> guesses;
        for (const Json& g : doc.at("guesses")) {
            const int term = as_int(field(g, "term"), "guess term") - 1;
            if (term < 0 || static_cast<std::size_t>(term) >= h.terms.size()) {
                throw Error(ErrorKind::MalformedGuess, "guess names unknown term");
            }
            const auto dim = h.terms[static_cast<std::size_t>(term)].matrix.rows();
            guesses.push_back({static_cast<std::size_t>(term), as_matrix(field(g, "matrix"), dim, "guess matrix"),
                               as_rational(field(g, "lambda"), "lambda")});
        }
        out.guesses = std::move(guesses);
    }
    return out;
}

std::string write_hamiltonian(const HamiltonianFile& file)
{
    const HamiltonianInstance& h = file.instance;
    Json doc;
    doc["n"] = h.n;
    doc["D"] = h.D;
    doc["alpha"] = format_rational(h.alpha);
    doc["beta"] = format_rational(h.beta);
    Json terms = Json::array();
    for (const auto& t : h.terms) {
        Json support = Json::array();
        for (int q : t.support) {
            support.push_back(q + 1);
        }
        terms.push_back({{"support", support}, {"matrix", matrix_json(t.matrix)}});
    }
    doc["terms"] = std::move(terms);
    if (file.guesses) {
        Json guesses = Json::array();
        for (const auto& g : *file.guesses) {
            guesses.push_back({{"term", g.term + 1},
                               {"matrix", matrix_json(g.projector)},
                               {"lambda", format_rational(g.lambda)}});
        }
        doc["guesses"] = std::move(guesses);
    }
    return render(doc);
}

InjectivePartition parse_partition(std::string_view text)
{
    InjectivePartition p;
    for (auto block : split(text, ';')) {
        std::vector<NodeId> ids;
        for (auto id : split(block, ',')) {
            ids.push_back(parse_int(id, "partition"));
        }
        p.blocks.push_back(std::move(ids));
    }
    return p;
}

std::vector<int> parse_int_list(std::string_view text)
{
    std::vector<int> out;
    if (text.empty()) {
        return out;
    }
    for (auto part : split(text, ',')) {
        out.push_back(parse_int(part, "list"));
    }
    return out;
}

std::string write_grouped_vectors(const GroupedVectorInput& input)
{
    Json doc = Json::array();
    for (const auto& group : input) {
        Json edges = Json::array();
        for (SlotRef s : group.physical) {
            edges.push_back(format_slot(s));
        }
        Json amplitudes = Json::array();
        for (const auto& a : group.amplitudes) {
            amplitudes.push_back(scalar_json(a));
        }
        doc.push_back({{"edges", edges}, {"vector", amplitudes}});
    }
    return render(doc);
}

} // namespace tnz
