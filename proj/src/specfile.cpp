#include "lipeq/specfile.hpp"

#include "lipeq/errors.hpp"
#include "lipeq/expr.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace lipeq {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& origin, const std::string& what) {
    throw SpecError(origin + ": " + what);
}

LambdaPoly expr_at(const json& j, const std::string& origin, const std::string& where) {
    if (!j.is_string()) fail(origin, where + ": expected an expression string");
    try {
        return parse_expr(j.get<std::string>());
    } catch (const SyntaxError& e) {
        fail(origin, where + ": " + e.what());
    }
}

MapWord word_at(const json& j, const std::string& origin, const std::string& where,
                int map_count) {
    if (!j.is_array()) fail(origin, where + ": expected an array of map indices");
    MapWord w;
    for (const auto& v : j) {
        if (!v.is_number_integer()) fail(origin, where + ": map indices must be integers");
        int idx = v.get<int>();
        if (idx < 1 || idx > map_count)
            fail(origin, where + ": map index " + std::to_string(idx) + " out of range 1.." +
                             std::to_string(map_count));
        w.push_back(idx - 1);
    }
    return w;
}

}  // namespace

SpecFile parse_spec_json(const std::string& text, const std::string& origin) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        fail(origin, std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object()) fail(origin, "top level must be an object");

    int dim = 1;
    if (j.contains("dim")) {
        if (!j["dim"].is_number_integer()) fail(origin, "dim must be an integer");
        dim = j["dim"].get<int>();
        if (dim != 1 && dim != 2) fail(origin, "dim must be 1 or 2");
    }

    if (!j.contains("lambda") || !j["lambda"].is_string())
        fail(origin, "missing \"lambda\" (rational string such as \"1/6\")");
    Rational lambda;
    try {
        lambda = parse_rational(j["lambda"].get<std::string>());
    } catch (const SyntaxError& e) {
        fail(origin, std::string("lambda: ") + e.what());
    }

    if (!j.contains("maps") || !j["maps"].is_array() || j["maps"].empty())
        fail(origin, "missing \"maps\" array");
    std::vector<std::vector<LambdaPoly>> translations;
    int index = 0;
    for (const auto& entry : j["maps"]) {
        ++index;
        std::string where = "maps[" + std::to_string(index) + "]";
        std::vector<LambdaPoly> coords;
        if (dim == 1) {
            coords.push_back(expr_at(entry, origin, where));
        } else {
            if (!entry.is_array() || entry.size() != 2)
                fail(origin, where + ": expected [x, y] expression pair");
            coords.push_back(expr_at(entry[0], origin, where + ".x"));
            coords.push_back(expr_at(entry[1], origin, where + ".y"));
        }
        translations.push_back(std::move(coords));
    }

    std::optional<CustomPartition> partition;
    const int m = static_cast<int>(translations.size());
    if (j.contains("partition")) {
        const json& p = j["partition"];
        if (!p.is_object() || !p.contains("pieces") || !p.contains("edges"))
            fail(origin, "partition needs \"pieces\" and \"edges\"");
        CustomPartition cp;
        int pi = 0;
        for (const auto& pj : p["pieces"]) {
            ++pi;
            std::string where = "partition.pieces[" + std::to_string(pi) + "]";
            if (!pj.is_object() || !pj.contains("base"))
                fail(origin, where + ": expected {\"base\": [...], \"minus\": [[...], ...]}");
            PieceSpec piece;
            piece.base = word_at(pj["base"], origin, where + ".base", m);
            if (pj.contains("minus"))
                for (const auto& u : pj["minus"])
                    piece.minus.push_back(word_at(u, origin, where + ".minus", m));
            cp.pieces.push_back(std::move(piece));
        }
        int n = static_cast<int>(cp.pieces.size());
        int ei = 0;
        for (const auto& ej : p["edges"]) {
            ++ei;
            std::string where = "partition.edges[" + std::to_string(ei) + "]";
            if (!ej.is_object() || !ej.contains("from") || !ej.contains("to") ||
                !ej.contains("via"))
                fail(origin, where + ": expected {\"from\", \"to\", \"via\"}");
            if (!ej["from"].is_number_integer() || !ej["to"].is_number_integer())
                fail(origin, where + ": \"from\" and \"to\" must be integers");
            CustomEdge e;
            int from = ej["from"].get<int>();
            int to = ej["to"].get<int>();
            if (from < 1 || from > n || to < 1 || to > n)
                fail(origin, where + ": vertex out of range 1.." + std::to_string(n));
            e.from = from - 1;
            e.to = to - 1;
            e.via = word_at(ej["via"], origin, where + ".via", m);
            if (e.via.empty()) fail(origin, where + ".via: must be nonempty");
            cp.edges.push_back(std::move(e));
        }
        partition = std::move(cp);
    }

    AnalysisParams params;
    if (j.contains("params")) {
        const json& p = j["params"];
        if (!p.is_object()) fail(origin, "params must be an object");
        try {
            if (p.contains("depth")) params.depth = p["depth"].get<int>();
            if (p.contains("word_depth")) params.word_depth = p["word_depth"].get<int>();
            if (p.contains("pairs")) params.pairs = p["pairs"].get<int>();
            if (p.contains("seed")) params.seed = p["seed"].get<std::uint64_t>();
            if (p.contains("tol")) params.tol = p["tol"].get<double>();
            if (p.contains("cap")) params.cap = p["cap"].get<long long>();
        } catch (const json::exception& e) {
            fail(origin, std::string("params: ") + e.what());
        }
        if (params.depth < 1 || params.word_depth < 1 || params.pairs < 0)
            fail(origin, "params out of range");
    }

    try {
        SpecFile out{HomogeneousIFS(lambda, dim, std::move(translations)), std::move(partition),
                     params, origin};
        return out;
    } catch (const std::invalid_argument& e) {
        fail(origin, e.what());
    }
}

SpecFile load_spec_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw SpecError(path + ": cannot open file");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_spec_json(buf.str(), path);
}

}  // namespace lipeq
