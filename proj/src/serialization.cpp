#include "cantor/serialization.hpp"

#include <filesystem>
#include <fstream>
#include <stdexcept>

#include "cantor/constructions.hpp"

namespace cantor {

Json rational_to_json(const Rational& r) { return r.to_string(); }

Rational rational_from_json(const Json& j) {
    if (j.is_number_integer()) return Rational(j.get<long>());
    if (j.is_string()) return Rational::from_string(j.get<std::string>());
    throw std::invalid_argument("rational_from_json: expected \"num/den\" string or integer");
}

Json interval_to_json(const Interval& iv) {
    return Json::array({rational_to_json(iv.lo), rational_to_json(iv.hi), iv.lo_closed, iv.hi_closed});
}

Interval interval_from_json(const Json& j) {
    if (!j.is_array() || j.size() != 4)
        throw std::invalid_argument("interval_from_json: expected [lo, hi, lo_closed, hi_closed]");
    return Interval(rational_from_json(j[0]), rational_from_json(j[1]), j[2].get<bool>(),
                    j[3].get<bool>());
}

Json union_to_json(const IntervalUnion& u) {
    Json arr = Json::array();
    for (const Interval& p : u.parts()) arr.push_back(interval_to_json(p));
    return arr;
}

IntervalUnion union_from_json(const Json& j) {
    std::vector<Interval> parts;
    for (const Json& e : j) parts.push_back(interval_from_json(e));
    return IntervalUnion::normalized(std::move(parts));
}

Json gap_set_to_json(const GapCantor& gc, const GapBudget& budget) {
    Json out;
    out["schema"] = kSchemaId;
    out["kind"] = "gap";
    out["ambient"] = interval_to_json(gc.ambient());
    Json gaps = Json::array();
    auto info = gc.for_each_gap(budget, [&](int, const Interval& g) {
        gaps.push_back(interval_to_json(g));
        return true;
    });
    out["gaps"] = std::move(gaps);
    out["truncated"] = !info.complete;
    Json meta = Json::object();
    if (!gc.meta().empty()) {
        meta = Json::parse(gc.meta(), nullptr, false);
        if (meta.is_discarded()) meta = Json::object({{"raw", gc.meta()}});
    }
    out["meta"] = std::move(meta);
    return out;
}

GapCantor gap_set_from_json(const Json& j) {
    Interval ambient = interval_from_json(j.at("ambient"));
    std::vector<Interval> gaps;
    for (const Json& e : j.at("gaps")) gaps.push_back(interval_from_json(e));
    bool truncated = j.value("truncated", false);
    std::string meta = j.contains("meta") ? j["meta"].dump() : std::string("{}");
    return GapCantor::from_gap_list(std::move(ambient), std::move(gaps), std::move(meta), truncated);
}

Json digit_spec_to_json(const DigitCantorSpec& spec) {
    Json out;
    out["schema"] = kSchemaId;
    out["kind"] = "digit";
    out["base"] = spec.base();
    out["digits"] = spec.digits();
    out["scale"] = rational_to_json(spec.scale());
    out["translate"] = rational_to_json(spec.translate());
    return out;
}

DigitCantorSpec digit_spec_from_json(const Json& j) {
    std::vector<unsigned> digits = j.at("digits").get<std::vector<unsigned>>();
    Rational scale = j.contains("scale") ? rational_from_json(j["scale"]) : Rational(1);
    Rational translate = j.contains("translate") ? rational_from_json(j["translate"]) : Rational(0);
    return DigitCantorSpec(j.at("base").get<unsigned>(), std::move(digits), std::move(scale),
                           std::move(translate));
}

Json cover_to_json(const CoverApprox& cover) {
    Json out;
    out["schema"] = kSchemaId;
    out["kind"] = "cover";
    out["depth"] = cover.depth;
    out["parts"] = union_to_json(cover.cover);
    return out;
}

CoverApprox cover_from_json(const Json& j) {
    return CoverApprox{j.at("depth").get<int>(), union_from_json(j.at("parts"))};
}

LoadedSet set_from_json(const Json& j) {
    LoadedSet out;
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "gap")
        out.gaps = gap_set_from_json(j);
    else if (kind == "digit")
        out.spec = digit_spec_from_json(j);
    else if (kind == "cover")
        out.cover = cover_from_json(j);
    else
        throw std::invalid_argument("set_from_json: unknown kind '" + kind + "'");
    return out;
}

LoadedSet load_set_file(const std::string& path) {
    return set_from_json(Json::parse(read_file(path)));
}

Json dimension_to_json(const DimensionEnclosure& d) {
    Json out;
    out["lo"] = rational_to_json(d.lo);
    out["hi"] = rational_to_json(d.hi);
    if (d.exact) out["exact"] = rational_to_json(*d.exact);
    out["degenerate"] = d.degenerate;
    return out;
}

Json cert_to_json(const FuzzyMeasureCert& cert) {
    Json out;
    out["dimension"] = dimension_to_json(cert.dim);
    out["ck_lower"] = rational_to_json(cert.ck_lower);
    out["ck_upper"] = rational_to_json(cert.ck_upper);
    Json scales = Json::array();
    for (const Rational& s : cert.scales_examined) scales.push_back(rational_to_json(s));
    out["scales_examined"] = std::move(scales);
    return out;
}

Json cp_report_to_json(const CpReport& r) {
    Json out;
    out["p"] = rational_to_json(r.p);
    Json sums = Json::array();
    for (const auto& [level, sum] : r.partial_sums)
        sums.push_back(Json::array({level, rational_to_json(sum)}));
    out["partial_sums"] = std::move(sums);
    switch (r.verdict) {
        case CpReport::Verdict::converging_evidence: out["verdict"] = "converging-evidence"; break;
        case CpReport::Verdict::diverging_evidence: out["verdict"] = "diverging-evidence"; break;
        case CpReport::Verdict::inconclusive: out["verdict"] = "inconclusive"; break;
    }
    return out;
}

Json p_estimate_to_json(const PEstimate& e) {
    Json out;
    out["method"] = PEstimate::method;
    out["lo"] = rational_to_json(e.lo);
    out["hi"] = rational_to_json(e.hi);
    out["sample_size"] = e.sample_size;
    out["inconclusive"] = e.inconclusive;
    return out;
}

Json nesting_report_to_json(const NestingReport& r, bool include_sets) {
    Json out;
    out["schema"] = kSchemaId;
    out["diam_k"] = rational_to_json(r.diam_k);
    out["diam_ktilde"] = rational_to_json(r.diam_ktilde);
    out["base"] = r.base ? interval_to_json(*r.base) : Json(nullptr);
    out["bound_computed"] = r.bound_computed;
    if (r.bound_computed) {
        out["big_gap_sum"] = rational_to_json(r.big_gap_sum);
        out["small_gap_sum_upper"] = rational_to_json(r.small_gap_sum_upper);
        out["theo1_bound"] = rational_to_json(r.theo1_bound);
    }
    out["oracle_computed"] = r.oracle_computed;
    if (r.oracle_computed) {
        out["x_inner_measure"] = rational_to_json(r.x_inner.measure());
        out["x_outer_measure"] = rational_to_json(r.x_outer.measure());
        if (include_sets) {
            out["x_inner"] = union_to_json(r.x_inner);
            out["x_outer"] = union_to_json(r.x_outer);
        }
    }
    out["depth_used"] = r.depth_used;
    out["gaps_used"] = r.gaps_used;
    out["tail_incomplete"] = r.tail_incomplete;
    return out;
}

namespace {

Rational param_rat(const Json& params, const char* key) {
    if (!params.contains(key))
        throw std::invalid_argument(std::string("missing construction parameter '") + key + "'");
    return rational_from_json(params[key]);
}

long param_int(const Json& params, const char* key) {
    if (!params.contains(key))
        throw std::invalid_argument(std::string("missing construction parameter '") + key + "'");
    return params[key].get<long>();
}

long param_int_or(const Json& params, const char* key, long fallback) {
    return params.contains(key) ? params[key].get<long>() : fallback;
}

struct RegistryEntry {
    const char* name;
    const char* schema;  // terse parameter documentation
    LoadedSet (*build)(const Json&);
};

const RegistryEntry kRegistry[] = {
    {"middle_gap", R"js({"s":"rational with integer 1/s >= 2","levels":"int >= 0"})js",
     [](const Json& p) {
         LoadedSet out;
         out.gaps = middle_gap(param_rat(p, "s"), static_cast<int>(param_int(p, "levels")));
         return out;
     }},
    {"counterexample_kp",
     R"js({"p":"rational in (0,1)","n_start":"int >= 1","i_max":"int","gap_cap":"optional int"})js",
     [](const Json& p) {
         LoadedSet out;
         std::size_t cap = static_cast<std::size_t>(param_int_or(p, "gap_cap", 1L << 22));
         out.gaps = counterexample_kp(param_rat(p, "p"), static_cast<int>(param_int(p, "n_start")),
                                      static_cast<int>(param_int(p, "i_max")), cap);
         return out;
     }},
    {"random_kp",
     R"js({"p":"rational in (0,1)","i_lo":"int >= 1","i_hi":"int","seed":"uint64","resolution":"optional bits, default 53"})js",
     [](const Json& p) {
         LoadedSet out;
         RandomSeed seed{p.at("seed").get<std::uint64_t>(), {}};
         out.gaps = random_kp(param_rat(p, "p"), static_cast<int>(param_int(p, "i_lo")),
                              static_cast<int>(param_int(p, "i_hi")), seed,
                              static_cast<unsigned>(param_int_or(p, "resolution", 53)));
         return out;
     }},
    {"pesin_k2", R"js({"s":"rational > 0","n":"int >= 2","sum_budget":"int <= 26"})js",
     [](const Json& p) {
         LoadedSet out;
         out.gaps = pesin_k2(param_rat(p, "s"), param_int(p, "n"),
                             static_cast<int>(param_int(p, "sum_budget")));
         return out;
     }},
    {"pesin_k3", R"js({"m":"int >= 3","delta":"rational in (0,1/2)","sum_budget":"int <= 26"})js",
     [](const Json& p) {
         LoadedSet out;
         out.gaps = pesin_k3(param_int(p, "m"), param_rat(p, "delta"),
                             static_cast<int>(param_int(p, "sum_budget")));
         return out;
     }},
    {"dio_gapset",
     R"js({"d":"int >= 3","q0":"int >= 2","q_max":"int","range":["lo","hi"]})js",
     [](const Json& p) {
         LoadedSet out;
         const Json& r = p.at("range");
         Interval range = Interval::closed(rational_from_json(r.at(0)), rational_from_json(r.at(1)));
         out.gaps = dio_gapset(static_cast<int>(param_int(p, "d")), param_int(p, "q0"),
                               param_int(p, "q_max"), range);
         return out;
     }},
    {"digit_cantor",
     R"js({"base":"int >= 2","digits":["ints"],"scale":"optional rational","translate":"optional rational"})js",
     [](const Json& p) {
         LoadedSet out;
         out.spec = digit_spec_from_json(p);
         return out;
     }},
    {"cf_cantor", R"js({"k":"int >= 1","depth":"int >= 1"})js",
     [](const Json& p) {
         LoadedSet out;
         out.cover = cf_cantor(static_cast<int>(param_int(p, "k")),
                               static_cast<int>(param_int(p, "depth")));
         return out;
     }},
};

}  // namespace

std::vector<std::string> construction_names() {
    std::vector<std::string> names;
    for (const auto& e : kRegistry) names.emplace_back(e.name);
    return names;
}

Json construction_schema(const std::string& name) {
    for (const auto& e : kRegistry)
        if (name == e.name) return Json::parse(e.schema);
    throw std::invalid_argument("unknown construction '" + name + "'");
}

LoadedSet build_construction(const std::string& name, const Json& params) {
    for (const auto& e : kRegistry)
        if (name == e.name) return e.build(params);
    throw std::invalid_argument("unknown construction '" + name + "'");
}

void write_file_atomic(const std::string& path, const std::string& contents) {
    namespace fs = std::filesystem;
    fs::path target(path);
    if (target.has_parent_path()) fs::create_directories(target.parent_path());
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw std::runtime_error("cannot open for writing: " + tmp.string());
        f << contents;
        if (!f.good()) throw std::runtime_error("write failed: " + tmp.string());
    }
    fs::rename(tmp, target);
}

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open: " + path);
    return std::string(std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>());
}

}  // namespace cantor
