#include <CLI11.hpp>

#include <iostream>
#include <sstream>

#include "cantor/combinatorics.hpp"
#include "cantor/constructions.hpp"
#include "cantor/nesting.hpp"
#include "cantor/serialization.hpp"

namespace {

using namespace cantor;

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitIndeterminate = 2;
constexpr int kExitUncertifiable = 3;
constexpr int kExitError = 10;

struct CommonOpts {
    std::string out;
    unsigned precision = 64;
    int levels = -1;
    long gaps = -1;

    GapBudget budget() const {
        GapBudget b;
        if (levels >= 0) b.max_level = levels;
        if (gaps >= 0) b.max_count = static_cast<std::size_t>(gaps);
        return b;
    }
    Json config() const {
        Json c;
        c["precision"] = precision;
        if (levels >= 0) c["levels"] = levels;
        if (gaps >= 0) c["gaps"] = gaps;
        return c;
    }
};

void emit(const std::string& out, const Json& report) {
    std::string text = report.dump(2) + "\n";
    if (out.empty())
        std::cout << text;
    else
        write_file_atomic(out, text);
}

void emit_csv(const std::string& path, const std::string& text) {
    if (!path.empty()) write_file_atomic(path, text);
}

std::string union_csv(const IntervalUnion& u) {
    std::ostringstream os;
    os << "lo,hi\n";
    for (const Interval& p : u.parts()) os << p.lo << "," << p.hi << "\n";
    return os.str();
}

DigitCantorSpec require_spec(const LoadedSet& set, const std::string& path) {
    if (!set.spec) throw std::runtime_error(path + ": expected a \"digit\" set file");
    return *set.spec;
}

GapCantor require_gaps(const LoadedSet& set, const std::string& path) {
    if (!set.gaps) throw std::runtime_error(path + ": expected a \"gap\" set file");
    return *set.gaps;
}

// ---------------------------------------------------------------------------

int cmd_build(const std::string& name, const std::string& params_text, const CommonOpts& common) {
    Json params = params_text.empty() ? Json::object() : Json::parse(params_text);
    LoadedSet built = build_construction(name, params);
    Json out;
    if (built.gaps)
        out = gap_set_to_json(*built.gaps, common.budget());
    else if (built.spec)
        out = digit_spec_to_json(*built.spec);
    else if (built.cover)
        out = cover_to_json(*built.cover);
    out["config"] = Json{{"command", "build"}, {"name", name}, {"params", params}};
    emit(common.out, out);
    return kExitOk;
}

int cmd_analyze(const std::string& set_path, bool want_p, const std::string& cp_p, bool want_ck,
                bool want_dim, int ck_depth, const CommonOpts& common) {
    LoadedSet set = load_set_file(set_path);
    Json report;
    report["schema"] = kSchemaId;
    report["config"] = Json{{"command", "analyze"}, {"set", set_path},
                            {"p_estimate", want_p},  {"cp", cp_p},
                            {"ck", want_ck},         {"dim", want_dim},
                            {"ck_depth", ck_depth},  {"common", common.config()}};
    bool uncertifiable = false;

    if (want_p) {
        if (set.gaps)
            report["p_estimate"] = p_estimate_to_json(estimate_P(*set.gaps, common.budget(),
                                                                 common.precision));
        else {
            report["p_estimate"] = "uncertifiable";
            uncertifiable = true;
        }
    }
    if (!cp_p.empty()) {
        if (set.gaps)
            report["cp"] = cp_report_to_json(cp_partial_sum(*set.gaps, Rational::from_string(cp_p),
                                                            common.budget(), common.precision));
        else {
            report["cp"] = "uncertifiable";
            uncertifiable = true;
        }
    }
    if (want_dim) {
        if (set.spec)
            report["dimension"] = dimension_to_json(dimension(*set.spec, common.precision));
        else {
            report["dimension"] = "uncertifiable";
            uncertifiable = true;
        }
    }
    if (want_ck) {
        if (set.spec)
            report["ck"] = cert_to_json(ck_upper_bound(*set.spec, ck_depth, 32, common.precision));
        else {
            report["ck"] = "uncertifiable";
            uncertifiable = true;
        }
    }
    emit(common.out, report);
    return uncertifiable ? kExitUncertifiable : kExitOk;
}

int cmd_nest(const std::string& k_path, const std::string& kt_path, int depth,
             const std::string& lambda, int ck_depth, const std::string& csv_prefix,
             const CommonOpts& common) {
    DigitCantorSpec spec = require_spec(load_set_file(k_path), k_path);
    GapCantor gc = require_gaps(load_set_file(kt_path), kt_path);
    if (!lambda.empty()) spec = spec.scaled(Rational::from_string(lambda));

    FuzzyMeasureCert cert = ck_upper_bound(spec, ck_depth, 32, common.precision);
    NestingReport bound = theo1_lower_bound(spec, cert, gc, common.budget(), common.precision);
    NestingReport oracle = x_inner_outer(spec, gc, depth, common.budget());
    bound.oracle_computed = true;
    bound.x_inner = oracle.x_inner;
    bound.x_outer = oracle.x_outer;
    bound.depth_used = depth;
    bound.tail_incomplete = bound.tail_incomplete || oracle.tail_incomplete;

    Json report = nesting_report_to_json(bound, false);
    report["ck"] = cert_to_json(cert);
    report["config"] = Json{{"command", "nest"},   {"k", k_path},        {"ktilde", kt_path},
                            {"depth", depth},      {"lambda", lambda},   {"ck_depth", ck_depth},
                            {"common", common.config()}};
    int verdict = !bound.base                       ? kExitIndeterminate
                  : bound.theo1_bound.is_positive() ? kExitOk
                                                    : kExitViolation;
    report["verdict"] = verdict == kExitOk          ? "certified-positive"
                        : verdict == kExitViolation ? "certified-violation"
                                                    : "indeterminate";
    emit(common.out, report);
    if (!csv_prefix.empty()) {
        emit_csv(csv_prefix + "_inner.csv", union_csv(bound.x_inner));
        emit_csv(csv_prefix + "_outer.csv", union_csv(bound.x_outer));
    }
    return verdict;
}

int cmd_scan(const std::string& k_path, const std::string& kt_path, const std::string& grid_text,
             int depth, int ck_depth, const std::string& csv_path, const CommonOpts& common) {
    DigitCantorSpec spec = require_spec(load_set_file(k_path), k_path);
    GapCantor gc = require_gaps(load_set_file(kt_path), kt_path);
    FuzzyMeasureCert cert = ck_upper_bound(spec, ck_depth, 32, common.precision);

    std::vector<Rational> grid;
    std::stringstream ss(grid_text);
    for (std::string item; std::getline(ss, item, ',');)
        if (!item.empty()) grid.push_back(Rational::from_string(item));

    auto rows = lambda_scan(spec, cert, gc, grid, depth, common.budget(), common.precision);
    Json jrows = Json::array();
    std::ostringstream csv;
    csv << "lambda,theo1_bound,x_inner_measure,x_outer_measure,tail_incomplete\n";
    std::optional<Rational> best;
    for (const auto& r : rows) {
        jrows.push_back(Json{{"lambda", rational_to_json(r.lambda)},
                             {"theo1_bound", rational_to_json(r.theo1_bound)},
                             {"x_inner_measure", rational_to_json(r.x_inner_measure)},
                             {"x_outer_measure", rational_to_json(r.x_outer_measure)},
                             {"tail_incomplete", r.tail_incomplete}});
        csv << r.lambda << "," << r.theo1_bound << "," << r.x_inner_measure << ","
            << r.x_outer_measure << "," << (r.tail_incomplete ? 1 : 0) << "\n";
        if (r.theo1_bound.is_positive() && (!best || *best < r.lambda)) best = r.lambda;
    }
    Json report;
    report["schema"] = kSchemaId;
    report["rows"] = std::move(jrows);
    report["largest_positive_lambda"] = best ? rational_to_json(*best) : Json(nullptr);
    report["config"] = Json{{"command", "scan"}, {"k", k_path},        {"ktilde", kt_path},
                            {"grid", grid_text}, {"depth", depth},     {"ck_depth", ck_depth},
                            {"common", common.config()}};
    emit(common.out, report);
    emit_csv(csv_path, csv.str());
    return kExitOk;
}

int cmd_dio(int d, const std::string& s_lo, const std::string& s_hi, const std::string& m_text,
            const std::string& ck_text, long q0, long q0_max, const std::string& csv_path,
            const CommonOpts& common) {
    Rational m_radius = Rational::from_string(m_text);
    Rational ck = Rational::from_string(ck_text);
    RatBounds s{Rational::from_string(s_lo),
                Rational::from_string(s_hi.empty() ? s_lo : s_hi), s_hi.empty()};

    Json jrows = Json::array();
    std::ostringstream csv;
    csv << "q0,lower_bound\n";
    for (long q = q0; q <= q0_max; ++q) {
        Rational b = dio_lower_bound(m_radius, ck, s, d, q, common.precision);
        jrows.push_back(Json{{"q0", q}, {"lower_bound", rational_to_json(b)}});
        csv << q << "," << b << "\n";
    }
    long q_hit = dio_q0_for_threshold(m_radius, ck, s, d, Rational(1, 100), q0_max,
                                      common.precision);
    Json report;
    report["schema"] = kSchemaId;
    report["rows"] = std::move(jrows);
    report["q0_within_1_100_of_2M"] = q_hit;
    report["config"] = Json{{"command", "dio"}, {"d", d},   {"s_lo", s_lo},     {"s_hi", s_hi},
                            {"m", m_text},      {"ck", ck_text}, {"q0", q0},    {"q0_max", q0_max},
                            {"common", common.config()}};
    emit(common.out, report);
    emit_csv(csv_path, csv.str());
    return kExitOk;
}

int cmd_comb(int max_k, int card_n, long m_cap, const std::string& delta_text,
             const std::string& csv_path, const CommonOpts& common) {
    SeqCountTable table = count_ck(max_k);
    bool dp_matches = true;
    for (long k = 0; k <= std::min(max_k, 14); ++k)
        dp_matches = dp_matches && table.at(static_cast<int>(k)) == count_ck_enumerated(k);
    bool below_pow2 = true;
    for (int k = 2; k <= max_k; ++k)
        below_pow2 = below_pow2 && table.at(k) <= mpz_class(1) << static_cast<unsigned long>(k);

    std::ostringstream csv;
    csv << "k,C_k\n";
    Json jcounts = Json::array();
    for (int k = 0; k <= max_k; ++k) {
        csv << k << "," << table.at(k).get_str() << "\n";
        jcounts.push_back(table.at(k).get_str());
    }

    Json report;
    report["schema"] = kSchemaId;
    report["counts"] = std::move(jcounts);
    report["dp_matches_enumeration_to_14"] = dp_matches;
    report["below_2_pow_k"] = below_pow2;
    if (card_n > 0) {
        EnsembleCard card = card_E(card_n, m_cap, Rational::from_string(delta_text),
                                   common.precision);
        report["card_E"] = Json{{"N", card.n_sum},
                                {"M", card.m_cap},
                                {"delta", rational_to_json(card.delta)},
                                {"card", card.card.get_str()},
                                {"bound_lower", rational_to_json(card.bound_lower)},
                                {"bound_holds", card.bound_holds}};
    }
    report["config"] = Json{{"command", "comb"},     {"max_k", max_k}, {"card_n", card_n},
                            {"m", m_cap},            {"delta", delta_text},
                            {"common", common.config()}};
    emit(common.out, report);
    emit_csv(csv_path, csv.str());
    return kExitOk;
}

int cmd_random_ce(const std::string& p_text, const std::string& k_path, std::uint64_t seed0,
                  int n_seeds, int i0, int i1, int depth, const std::string& csv_path,
                  const CommonOpts& common) {
    Rational p = Rational::from_string(p_text);
    DigitCantorSpec spec = require_spec(load_set_file(k_path), k_path);

    std::ostringstream csv;
    csv << "seed,i_hi,x_outer_measure\n";
    Json jrows = Json::array();
    std::vector<Rational> means;
    for (int hi = i0; hi <= i1; ++hi) {
        Rational total(0);
        for (int s = 0; s < n_seeds; ++s) {
            RandomSeed seed{seed0 + static_cast<std::uint64_t>(s), {}};
            GapCantor gc = random_kp(p, i0, hi, seed);
            NestingReport r = x_inner_outer(spec, gc, depth, common.budget());
            Rational measure = r.x_outer.measure();
            total += measure;
            csv << seed.seed << "," << hi << "," << measure << "\n";
            jrows.push_back(Json{{"seed", seed.seed},
                                 {"i_hi", hi},
                                 {"x_outer_measure", rational_to_json(measure)}});
        }
        means.push_back(total / Rational(n_seeds));
    }
    bool non_increasing = true;
    for (std::size_t i = 0; i + 1 < means.size(); ++i)
        non_increasing = non_increasing && means[i + 1] <= means[i];

    Json report;
    report["schema"] = kSchemaId;
    report["rows"] = std::move(jrows);
    Json jmeans = Json::array();
    for (const Rational& m : means) jmeans.push_back(rational_to_json(m));
    report["mean_x_outer_by_i_hi"] = std::move(jmeans);
    report["mean_non_increasing"] = non_increasing;
    report["config"] = Json{{"command", "random-ce"}, {"p", p_text}, {"k", k_path},
                            {"seed", seed0},          {"seeds", n_seeds},
                            {"i0", i0},               {"i1", i1},
                            {"depth", depth},         {"common", common.config()}};
    emit(common.out, report);
    emit_csv(csv_path, csv.str());
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"cantor-nest: certified arithmetic for nested Cantor sets on the line"};
    app.require_subcommand(1);
    // Flags beat config-file values, which beat defaults. Config files use
    // one [subcommand] section per command, e.g. "[comb]\nmax-k=10".
    app.set_config("--config", "", "Read options from an INI file (given before the subcommand)");

    CommonOpts common;
    std::string name, params, set_path, k_path, kt_path, cp_p, lambda, grid, csv_path;
    std::string s_lo, s_hi, m_text = "1/1", ck_text = "0/1", delta = "1/3", p_text = "4/5";
    bool want_p = false, want_ck = false, want_dim = false;
    int depth = 6, ck_depth = 6, max_k = 14, card_n = 0, i0 = 2, i1 = 4, n_seeds = 20;
    int dio_d = 8;
    long q0 = 2, q0_max = 40, m_cap = 3;
    std::uint64_t seed0 = 1;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--out", common.out, "Report path (stdout when omitted)");
        sub->add_option("--precision", common.precision, "Dyadic rounding precision bits");
        sub->add_option("--levels", common.levels, "Gap budget: construction levels");
        sub->add_option("--gaps", common.gaps, "Gap budget: total gap count");
    };

    CLI::App* build = app.add_subcommand("build", "Materialize a named construction to a set file");
    build->add_option("--name", name, "Construction name")->required();
    build->add_option("--params", params, "JSON parameters for the construction");
    add_common(build);

    CLI::App* analyze = app.add_subcommand("analyze", "P/Cp/C_K/dimension report for a set file");
    analyze->add_option("--set", set_path, "Set file")->required();
    analyze->add_flag("--p-estimate", want_p, "Estimate the gap exponent P");
    analyze->add_option("--cp", cp_p, "Partial sums of the p-th power gap series");
    analyze->add_flag("--ck", want_ck, "Certify the box fuzzy measure C_K");
    analyze->add_flag("--dim", want_dim, "Dimension enclosure");
    analyze->add_option("--ck-depth", ck_depth, "Cover depth for the C_K certificate");
    add_common(analyze);

    CLI::App* nest = app.add_subcommand("nest", "Theorem bound plus inner/outer oracle");
    nest->add_option("--k", k_path, "K set file (digit kind)")->required();
    nest->add_option("--ktilde", kt_path, "K-tilde gap file")->required();
    nest->add_option("--depth", depth, "Cover depth for K");
    nest->add_option("--lambda", lambda, "Scale K by this rational first");
    nest->add_option("--ck-depth", ck_depth, "Cover depth for the C_K certificate");
    nest->add_option("--csv", csv_path, "Prefix for x_inner/x_outer CSV dumps");
    add_common(nest);

    CLI::App* scan = app.add_subcommand("scan", "Evaluate the scaled bound over a lambda grid");
    scan->add_option("--k", k_path, "Unit-diameter K set file")->required();
    scan->add_option("--ktilde", kt_path, "K-tilde gap file")->required();
    scan->add_option("--grid", grid, "Comma-separated rational lambdas")->required();
    scan->add_option("--depth", depth, "Cover depth for the oracle");
    scan->add_option("--ck-depth", ck_depth, "Cover depth for the C_K certificate");
    scan->add_option("--csv", csv_path, "CSV output path");
    add_common(scan);

    CLI::App* dio = app.add_subcommand("dio", "Diophantine lower-bound sweep in q0");
    dio->add_option("--d", dio_d, "Diophantine order (integer >= 3)");
    dio->add_option("--s", s_lo, "Dimension of K (lower end)")->required();
    dio->add_option("--s-hi", s_hi, "Dimension upper end (defaults to --s)");
    dio->add_option("--m", m_text, "Half-width M of the translation window");
    dio->add_option("--ck", ck_text, "Certified C_K upper bound");
    dio->add_option("--q0", q0, "First q0");
    dio->add_option("--q0-max", q0_max, "Last q0");
    dio->add_option("--csv", csv_path, "CSV output path");
    add_common(dio);

    CLI::App* comb = app.add_subcommand("comb", "Sequence-count tables and ensemble cardinalities");
    comb->add_option("--max-k", max_k, "Table size for C_k");
    comb->add_option("--card-n", card_n, "N for the exact card E(N) (0 to skip)");
    comb->add_option("--m", m_cap, "Digit cap M");
    comb->add_option("--delta", delta, "Weight fraction delta");
    comb->add_option("--csv", csv_path, "CSV output path");
    add_common(comb);

    CLI::App* rce = app.add_subcommand("random-ce", "Seeded random-gap trend study");
    rce->add_option("--p", p_text, "Gap exponent parameter p");
    rce->add_option("--k", k_path, "K set file (digit kind)")->required();
    rce->add_option("--seed", seed0, "Base seed");
    rce->add_option("--seeds", n_seeds, "Number of seeds");
    rce->add_option("--i0", i0, "First level");
    rce->add_option("--i1", i1, "Last level");
    rce->add_option("--depth", depth, "Cover depth for K");
    rce->add_option("--csv", csv_path, "CSV output path");
    add_common(rce);

    CLI11_PARSE(app, argc, argv);

    try {
        if (build->parsed()) return cmd_build(name, params, common);
        if (analyze->parsed())
            return cmd_analyze(set_path, want_p, cp_p, want_ck, want_dim, ck_depth, common);
        if (nest->parsed())
            return cmd_nest(k_path, kt_path, depth, lambda, ck_depth, csv_path, common);
        if (scan->parsed())
            return cmd_scan(k_path, kt_path, grid, depth, ck_depth, csv_path, common);
        if (dio->parsed())
            return cmd_dio(dio_d, s_lo, s_hi, m_text, ck_text, q0, q0_max, csv_path, common);
        if (comb->parsed()) return cmd_comb(max_k, card_n, m_cap, delta, csv_path, common);
        if (rce->parsed())
            return cmd_random_ce(p_text, k_path, seed0, n_seeds, i0, i1, depth, csv_path, common);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
    return kExitError;
}
