#include "unisum/spec_io.hpp"

#include <algorithm>
#include <fstream>
#include <memory>
#include <sstream>

#include "unisum/extended_sum.hpp"
#include "unisum/operators.hpp"
#include "unisum/uninorms.hpp"

namespace unisum {

namespace {

using nlohmann::json;

[[noreturn]] void schema_fail(const std::string& what) { throw SchemaError("schema: " + what); }

const json& need(const json& node, const char* key) {
    if (!node.is_object() || !node.contains(key))
        schema_fail(std::string("missing field '") + key + "'");
    return node.at(key);
}

std::string need_string(const json& node, const char* key) {
    const json& v = need(node, key);
    if (!v.is_string()) schema_fail(std::string("field '") + key + "' must be a string");
    return v.get<std::string>();
}

double need_unit(const json& node, const char* key) {
    const json& v = need(node, key);
    if (!v.is_number()) schema_fail(std::string("field '") + key + "' must be a number");
    double x = v.get<double>();
    if (!(x >= 0.0 && x <= 1.0))
        schema_fail(std::string("field '") + key + "' must lie in [0,1]");
    return x;
}

AnnihilatorPolicy parse_policy(const std::string& s) {
    if (s == "conjunctive") return AnnihilatorPolicy::Conjunctive;
    if (s == "disjunctive") return AnnihilatorPolicy::Disjunctive;
    schema_fail("policy must be 'conjunctive' or 'disjunctive'");
}

OperatorHandle build_tnorm(const json& node) {
    std::string family = need_string(node, "family");
    if (family == "min") return min_tnorm();
    if (family == "product") return product_tnorm();
    if (family == "lukasiewicz") return lukasiewicz_tnorm();
    if (family == "hamacher") return generated_tnorm(hamacher_tnorm_generator());
    if (family == "hamacher-numeric")
        return generated_tnorm(hamacher_tnorm_generator_numeric());
    schema_fail("unknown t-norm family '" + family + "'");
}

OperatorHandle build_tconorm(const json& node) {
    std::string family = need_string(node, "family");
    if (family == "max") return max_tconorm();
    if (family == "probsum") return probsum_tconorm();
    if (family == "lukasiewicz") return lukasiewicz_tconorm();
    schema_fail("unknown t-conorm family '" + family + "'");
}

TNormSummandList build_block_list(const json& node) {
    const json& arr = need(node, "summands");
    if (!arr.is_array()) schema_fail("'summands' must be an array");
    std::vector<SummandInterval> entries;
    for (const json& s : arr)
        entries.push_back({need_unit(s, "lo"), need_unit(s, "hi"), build_operator(need(s, "op"))});
    return TNormSummandList(std::move(entries));
}

OperatorHandle build_s_internal(const json& node) {
    const json& arr = need(node, "curve");
    if (!arr.is_array() || arr.size() < 2)
        schema_fail("'curve' must be an array of at least two [x,y] points");
    auto pts = std::make_shared<std::vector<std::pair<double, double>>>();
    for (const json& p : arr) {
        if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number())
            schema_fail("curve points must be [x,y] number pairs");
        pts->emplace_back(p[0].get<double>(), p[1].get<double>());
    }
    InternalBoundary boundary;
    boundary.v = [pts](double x) {
        if (x <= pts->front().first) return pts->front().second;
        if (x >= pts->back().first) return pts->back().second;
        auto it = std::lower_bound(pts->begin(), pts->end(), x,
                                   [](const auto& q, double z) { return q.first < z; });
        auto [x1, y1] = *it;
        auto [x0, y0] = *(it - 1);
        return y0 + (y1 - y0) * (x - x0) / (x1 - x0);
    };
    if (node.contains("on_boundary")) {
        std::string rule = need_string(node, "on_boundary");
        if (rule == "min")
            boundary.on_boundary = BoundaryRule::TakeMin;
        else if (rule == "max")
            boundary.on_boundary = BoundaryRule::TakeMax;
        else
            schema_fail("on_boundary must be 'min' or 'max'");
    }
    if (node.contains("boundary_tol")) {
        if (!node.at("boundary_tol").is_number()) schema_fail("boundary_tol must be a number");
        boundary.boundary_tol = node.at("boundary_tol").get<double>();
    }
    return make_s_internal(boundary);
}

OrdinalSumSpec build_ordinal_sum_spec(const json& node) {
    double e = need_unit(node, "e");
    const json& arr = need(node, "summands");
    if (!arr.is_array()) schema_fail("'summands' must be an array");
    std::vector<Summand> summands;
    std::vector<std::pair<std::size_t, double>> declared_v;
    for (const json& s : arr) {
        Summand out;
        out.a = need_unit(s, "a");
        out.b = need_unit(s, "b");
        out.c = need_unit(s, "c");
        out.d = need_unit(s, "d");
        if (s.contains("op") && !s.at("op").is_null()) out.op = build_operator(s.at("op"));
        if (s.contains("character")) out.character = parse_policy(need_string(s, "character"));
        if (s.contains("v")) declared_v.emplace_back(summands.size(), need_unit(s, "v"));
        summands.push_back(std::move(out));
    }
    OrdinalSumSpec spec(e, std::move(summands));
    for (const auto& [k, v] : declared_v)
        if (std::abs(spec.v(k) - v) > 1e-12)
            throw std::invalid_argument("declared v_k disagrees with the resolved corner value");
    return spec;
}

ChoiceInterval parse_choice(const json& node) {
    const json& closed = need(node, "closed");
    if (!closed.is_boolean()) schema_fail("'closed' must be a boolean");
    return {need_unit(node, "upto"), closed.get<bool>()};
}

OperatorHandle build_extended_sum(const json& node) {
    OrdinalSumSpec base = build_ordinal_sum_spec(need(node, "base"));
    std::map<double, ChoiceInterval> g, h;
    using ChoiceTarget = std::pair<const char*, std::map<double, ChoiceInterval>*>;
    for (auto [key, dst] : {ChoiceTarget{"g", &g}, ChoiceTarget{"h", &h}}) {
        if (!node.contains(key)) continue;
        const json& arr = node.at(key);
        if (!arr.is_array()) schema_fail(std::string("'") + key + "' must be an array");
        for (const json& entry : arr) dst->emplace(need_unit(entry, "x"), parse_choice(entry));
    }
    return extended_sum_uninorm(ExtendedOrdinalSumSpec(std::move(base), std::move(g), std::move(h)));
}

}  // namespace

OperatorHandle build_operator(const json& node) {
    std::string kind = need_string(node, "kind");
    if (kind == "tnorm") return build_tnorm(node);
    if (kind == "tconorm") return build_tconorm(node);
    if (kind == "dual") return dualize(build_operator(need(node, "of")));
    if (kind == "ordinal-sum-tnorm") return ordinal_sum_tnorm(build_block_list(node));
    if (kind == "ordinal-sum-tconorm") return ordinal_sum_tconorm(build_block_list(node));
    if (kind == "representable") {
        std::string gen = need_string(node, "generator");
        if (gen != "logistic") schema_fail("unknown bipolar generator '" + gen + "'");
        return make_representable(logistic_generator(), parse_policy(need_string(node, "policy")));
    }
    if (kind == "u-min" || kind == "u-max") {
        OperatorHandle t = build_operator(need(node, "tnorm"));
        OperatorHandle c = build_operator(need(node, "tconorm"));
        double e = need_unit(node, "e");
        return kind == "u-min" ? make_u_min(t, c, e) : make_u_max(t, c, e);
    }
    if (kind == "s-internal") return build_s_internal(node);
    if (kind == "ordinal-sum") return ordinal_sum_uninorm(build_ordinal_sum_spec(node));
    if (kind == "extended-sum") return build_extended_sum(node);
    schema_fail("unknown construction kind '" + kind + "'");
}

namespace {

json normalize_block_list(const json& node, const char* kind) {
    json out;
    out["kind"] = kind;
    json arr = json::array();
    for (const json& s : need(node, "summands")) {
        json entry;
        entry["lo"] = need_unit(s, "lo");
        entry["hi"] = need_unit(s, "hi");
        entry["op"] = normalize_spec(need(s, "op"));
        arr.push_back(std::move(entry));
    }
    out["summands"] = std::move(arr);
    return out;
}

json normalize_ordinal_sum(const json& node) {
    json out;
    out["kind"] = "ordinal-sum";
    out["e"] = need_unit(node, "e");
    json arr = json::array();
    for (const json& s : need(node, "summands")) {
        json entry;
        entry["a"] = need_unit(s, "a");
        entry["b"] = need_unit(s, "b");
        entry["c"] = need_unit(s, "c");
        entry["d"] = need_unit(s, "d");
        if (s.contains("op") && !s.at("op").is_null()) entry["op"] = normalize_spec(s.at("op"));
        if (s.contains("character")) entry["character"] = need_string(s, "character");
        if (s.contains("v")) entry["v"] = need_unit(s, "v");
        arr.push_back(std::move(entry));
    }
    out["summands"] = std::move(arr);
    return out;
}

json normalize_choices(const json& arr) {
    json out = json::array();
    for (const json& entry : arr) {
        json c;
        c["x"] = need_unit(entry, "x");
        c["upto"] = need_unit(entry, "upto");
        c["closed"] = need(entry, "closed").get<bool>();
        out.push_back(std::move(c));
    }
    return out;
}

}  // namespace

json normalize_spec(const json& node) {
    std::string kind = need_string(node, "kind");
    if (kind == "tnorm" || kind == "tconorm")
        return json{{"kind", kind}, {"family", need_string(node, "family")}};
    if (kind == "dual") return json{{"kind", kind}, {"of", normalize_spec(need(node, "of"))}};
    if (kind == "ordinal-sum-tnorm" || kind == "ordinal-sum-tconorm")
        return normalize_block_list(node, kind.c_str());
    if (kind == "representable")
        return json{{"kind", kind},
                    {"generator", need_string(node, "generator")},
                    {"policy", need_string(node, "policy")}};
    if (kind == "u-min" || kind == "u-max")
        return json{{"kind", kind},
                    {"e", need_unit(node, "e")},
                    {"tnorm", normalize_spec(need(node, "tnorm"))},
                    {"tconorm", normalize_spec(need(node, "tconorm"))}};
    if (kind == "s-internal") {
        json out;
        out["kind"] = kind;
        out["curve"] = need(node, "curve");
        if (node.contains("on_boundary")) out["on_boundary"] = need_string(node, "on_boundary");
        if (node.contains("boundary_tol"))
            out["boundary_tol"] = node.at("boundary_tol").get<double>();
        return out;
    }
    if (kind == "ordinal-sum") return normalize_ordinal_sum(node);
    if (kind == "extended-sum") {
        json out;
        out["kind"] = kind;
        out["base"] = normalize_ordinal_sum(need(node, "base"));
        if (node.contains("g")) out["g"] = normalize_choices(node.at("g"));
        if (node.contains("h")) out["h"] = normalize_choices(node.at("h"));
        return out;
    }
    schema_fail("unknown construction kind '" + kind + "'");
}

json parse_spec_text(const std::string& text) {
    json doc = json::parse(text, nullptr, false);
    if (doc.is_discarded()) schema_fail("document is not valid JSON");
    return doc;
}

json load_spec_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) schema_fail("cannot read spec file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_spec_text(buf.str());
}

}  // namespace unisum
