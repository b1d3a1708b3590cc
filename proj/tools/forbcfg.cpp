// Command-line front end: construct | check | bound | forb | design | analyze.
// Exit codes: 0 success / pattern avoided / certificate ok, 1 pattern found or
// certificate failed, 2 usage error, 3 infeasible parameters or bad input.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "forbcfg/forbcfg.hpp"
#include "json.hpp"

using nlohmann::json;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    out << content;
    if (!out) throw std::runtime_error("write failed: " + path);
}

void print_json(const json& j) { std::cout << j.dump(2) << "\n"; }

std::pair<int, int> parse_shape(const std::string& s) {
    size_t comma = s.find(',');
    if (comma == std::string::npos)
        throw std::invalid_argument("shape must be \"k,l\", e.g. \"2,1\"");
    try {
        int k = std::stoi(s.substr(0, comma));
        int l = std::stoi(s.substr(comma + 1));
        return {k, l};
    } catch (const std::exception&) {
        throw std::invalid_argument("shape must be \"k,l\" with integer k and l");
    }
}

std::vector<int> parse_sums(const std::string& s) {
    std::vector<int> out;
    size_t dots = s.find("..");
    try {
        if (dots != std::string::npos) {
            int a = std::stoi(s.substr(0, dots));
            int b = std::stoi(s.substr(dots + 2));
            for (int x = a; x <= b; ++x) out.push_back(x);
        } else {
            std::stringstream ss(s);
            std::string tok;
            while (std::getline(ss, tok, ',')) out.push_back(std::stoi(tok));
        }
    } catch (const std::exception&) {
        throw std::invalid_argument("sums must be \"a..b\" or a comma list, e.g. \"3..6\"");
    }
    if (out.empty()) throw std::invalid_argument("empty sum set");
    return out;
}

json one_based(const std::vector<int>& v) {
    json a = json::array();
    for (int x : v) a.push_back(x + 1);
    return a;
}

// ---- subcommand runners ----

struct ConstructArgs {
    std::string family, out;
    int m = 0, q = 0, a = 1, b = 0;
};

int run_construct(const ConstructArgs& c) {
    using namespace forbcfg;
    auto need_m = [&] {
        if (c.m <= 0) throw std::invalid_argument("--m is required for family " + c.family);
    };
    BitMatrix A;
    if (c.family == "q10") {
        need_m();
        A = build_q10(c.m, c.q);
    } else if (c.family == "q110") {
        need_m();
        A = build_q110(c.m, c.q);
    } else if (c.family == "q1100") {
        need_m();
        int b = c.b > 0 ? c.b : c.q - 3 - c.a;
        A = build_q1100(c.m, c.q, c.a, b);
    } else if (c.family == "small_m_q110") {
        need_m();
        A = build_small_m_exception(c.m, c.q, 2, 1);
    } else if (c.family == "small_m_q1100") {
        need_m();
        A = build_small_m_exception(c.m, c.q, 2, 2);
    } else {
        A = build_pigeonhole_extremal_q10(c.q);
    }
    if (c.out.empty()) {
        std::cout << format_matrix(A);
    } else {
        write_file(c.out, format_matrix(A));
        print_json({{"family", c.family},
                    {"m", A.m},
                    {"q", c.q},
                    {"columns", A.n()},
                    {"simple", is_simple(A)},
                    {"file", c.out}});
    }
    return 0;
}

int run_check(const std::string& matrix_file, const std::string& pattern) {
    using namespace forbcfg;
    BitMatrix A = parse_matrix(read_file(matrix_file));
    Pattern P = parse_pattern(pattern);
    json out = {{"matrix", matrix_file}, {"pattern", format_pattern(P)}};
    if (P.k + P.l > A.m) {
        out["contains"] = false;
        out["note"] = "pattern has more rows than the matrix; trivially avoided";
        print_json(out);
        return 0;
    }
    auto w = contains_pattern(A, P);
    out["contains"] = w.has_value();
    if (w) {
        out["witness"] = {{"row_ones", one_based(w->row_ones)},
                          {"row_zeros", one_based(w->row_zeros)},
                          {"columns", one_based(w->column_indices)}};
        print_json(out);
        return 1;
    }
    out["max_split_count"] = max_split_count(A, P.k, P.l).count;
    print_json(out);
    return 0;
}

int run_bound(const std::string& pattern, int m, std::optional<long long> M) {
    using namespace forbcfg;
    Pattern P = parse_pattern(pattern);
    BoundReport r = bound_report(P, m, M);
    json out = {{"m", r.m},
                {"pattern", format_pattern(r.pattern)},
                {"lower_construction", r.lower_construction},
                {"upper_pigeonhole", r.upper_pigeonhole},
                {"upper_theorem", r.upper_theorem ? json(*r.upper_theorem) : json(nullptr)},
                {"notes", r.notes}};
    // Closed-form value where one exists; exact for all sufficiently large m.
    if (P.k == 2 && P.l == 1 && P.q >= 3) {
        FormulaValue f = forb_formula_q110(m, P.q);
        out["formula"] = {{"value", f.value},
                          {"integral", f.integral},
                          {"note", "closed-form value, exact for all sufficiently large m"}};
    } else if (P.k == 2 && P.l == 2 && P.q >= 3) {
        FormulaValue f = forb_formula_q1100(m, P.q);
        out["formula"] = {{"value", f.value},
                          {"integral", f.integral},
                          {"note", "closed-form value, exact for all sufficiently large m"}};
    } else if (P.k == 1 && P.l == 1) {
        if (auto f = forb_formula_q10(m, P.q))
            out["formula"] = {{"value", *f},
                             {"integral", true},
                             {"note", "exact at this m (threshold met)"}};
    }
    print_json(out);
    return 0;
}

struct ForbArgs {
    int m = 0, cap = 1;
    std::string pattern, sums, witness_out;
    bool limit_override = false;
    std::optional<long long> seed;
};

int run_forb(const ForbArgs& f) {
    using namespace forbcfg;
    Pattern P = parse_pattern(f.pattern);
    SearchProblem sp;
    sp.m = f.m;
    sp.pattern = P;
    sp.cap = f.cap;
    if (!f.sums.empty()) sp.allowed_sums = parse_sums(f.sums);
    sp.limit_override = f.limit_override;

    json params = {{"m", f.m},
                   {"pattern", format_pattern(P)},
                   {"cap", f.cap},
                   {"sums", f.sums.empty() ? json(nullptr) : json(f.sums)},
                   {"limit_override", f.limit_override},
                   {"seed", f.seed ? json(*f.seed) : json(nullptr)}};
    std::string key = cache_key("forb", params);
    json result;
    if (auto hit = cache_get(key)) {
        result = (*hit)["result"];
    } else {
        SearchResult res = forb_exact(sp);
        result = {{"max_columns", res.max_columns},
                  {"nodes", res.nodes_explored},
                  {"proof_of_optimality", res.proof_of_optimality},
                  {"witness", format_matrix(res.witness)}};
        RunRecord rec;
        rec.command = "forb";
        rec.parameters = params;
        rec.result = result;
        rec.timestamp = utc_timestamp();
        cache_put(key, rec);
    }
    json out = result;
    if (!f.witness_out.empty()) {
        write_file(f.witness_out, result["witness"].get<std::string>());
        out["witness_file"] = f.witness_out;
    }
    print_json(out);
    return 0;
}

struct DesignArgs {
    int v = 0, lambda = 0;
    bool strict = false, construct = false;
    std::string certify_file, out;
};

int run_design(const DesignArgs& d) {
    using namespace forbcfg;
    if (!d.certify_file.empty()) {
        TripleSystem ts = parse_design(read_file(d.certify_file));
        if (d.v > 0 && d.v != ts.v)
            throw std::invalid_argument("--v disagrees with the file's point count");
        if (d.lambda > 0 && d.lambda != ts.lambda)
            throw std::invalid_argument("--lambda disagrees with the file's value");
        DesignCertificate cert = certify(ts);
        json out = {{"v", ts.v},
                    {"lambda", ts.lambda},
                    {"blocks", ts.blocks.size()},
                    {"pair_coverage_ok", cert.pair_coverage_ok},
                    {"simple_ok", cert.simple_ok},
                    {"block_count_ok", cert.block_count_ok},
                    {"ok", cert.all_ok()},
                    {"detail", cert.detail}};
        if (cert.offending_pair)
            out["offending_pair"] = {cert.offending_pair->first, cert.offending_pair->second};
        if (cert.offending_block)
            out["offending_block"] = {(*cert.offending_block)[0], (*cert.offending_block)[1],
                                      (*cert.offending_block)[2]};
        print_json(out);
        return cert.all_ok() ? 0 : 1;
    }
    if (d.v <= 0) throw std::invalid_argument("--v is required");
    int lambda = d.lambda > 0 ? d.lambda : 1;
    if (d.construct) {
        TripleSystem ts =
            (lambda == 1 && d.v >= 7) ? steiner_construct(d.v) : simple_lambda_construct(d.v, lambda);
        if (d.out.empty())
            std::cout << format_design(ts);
        else {
            write_file(d.out, format_design(ts));
            print_json({{"v", ts.v}, {"lambda", ts.lambda}, {"blocks", ts.blocks.size()},
                        {"file", d.out}});
        }
        return 0;
    }
    print_json({{"v", d.v}, {"lambda", lambda}, {"strict", d.strict},
                {"exists", dehon_exists(d.v, lambda, d.strict)}});
    return 0;
}

struct AnalyzeArgs {
    std::string matrix_file, shape;
    int q = 0, section = 0;
};

int run_analyze(const AnalyzeArgs& a) {
    using namespace forbcfg;
    BitMatrix A = parse_matrix(read_file(a.matrix_file));
    auto [k, l] = parse_shape(a.shape);
    Pattern P{a.q, k, l};
    validate_pattern(P);
    if (k + l <= A.m && contains_pattern(A, P)) {
        std::cerr << "forbcfg: matrix contains " << format_pattern(P)
                  << "; analysis requires an avoiding matrix\n";
        return 1;
    }
    DegreeReport rep = degree_report(A, a.section, a.q);
    std::vector<InequalityVerdict> verdicts = lemma_monitor(A, a.q, k, l);
    SumProfile sp = sum_profile(A);
    const int m = A.m;

    json degrees, identities;
    if (a.section == 2) {
        degrees = {{"d1", rep.d1_row}, {"d0", rep.d0_row}, {"eps", rep.eps_row},
                   {"E1_rows", one_based(rep.E1_rows)}, {"E0_rows", one_based(rep.E0_rows)},
                   {"Y_rows", one_based(rep.Y_rows)}};
        long long a2 = sp.by_sum[2] + sp.by_sum[static_cast<size_t>(m) - 2];
        long long degree_sum = 0;
        for (int i = 0; i < m; ++i) degree_sum += rep.d0_row[i] + rep.d1_row[i];
        identities = {{"a2", a2}, {"half_degree_sum", degree_sum / 2},
                      {"a2_matches", 2 * a2 == degree_sum}};
    } else {
        json pairs = json::array();
        long long degree_sum = 0;
        for (size_t p = 0; p < rep.pairs.size(); ++p) {
            json e = {{"rows", json::array({rep.pairs[p].first + 1, rep.pairs[p].second + 1})},
                      {"d1", rep.d1_pair[p]}, {"eps", rep.eps_pair[p]}};
            degree_sum += rep.d1_pair[p];
            if (a.section == 4) {
                e["d0"] = rep.d0_pair[p];
                degree_sum += rep.d0_pair[p];
            }
            pairs.push_back(e);
        }
        json e1 = json::array(), e0 = json::array();
        for (auto [i, j] : rep.E1_pairs) e1.push_back(json::array({i + 1, j + 1}));
        for (auto [i, j] : rep.E0_pairs) e0.push_back(json::array({i + 1, j + 1}));
        json ypairs = json::array();
        for (auto [i, j] : rep.Y_pairs) ypairs.push_back(json::array({i + 1, j + 1}));
        degrees = {{"pairs", pairs}, {"E1_pairs", e1}, {"E0_pairs", e0}, {"Y_pairs", ypairs}};
        if (a.section == 3) {
            long long a3 = sp.by_sum[3];
            long long a2 = sp.by_sum[2];
            identities = {{"three_a3", 3 * a3}, {"degree_sum", degree_sum},
                          {"a3_matches", 3 * a3 == degree_sum},
                          {"a2", a2}, {"pairs_minus_E", binom(m, 2) - static_cast<long long>(
                                                            rep.E1_pairs.size())},
                          {"a2_matches", a2 == binom(m, 2) -
                                                  static_cast<long long>(rep.E1_pairs.size())}};
        } else {
            long long a3 = sp.by_sum[3] + sp.by_sum[static_cast<size_t>(m) - 3];
            long long a2 = sp.by_sum[2] + sp.by_sum[static_cast<size_t>(m) - 2];
            long long rhs = 2 * binom(m, 2) - static_cast<long long>(rep.E1_pairs.size()) -
                            static_cast<long long>(rep.E0_pairs.size());
            identities = {{"three_a3", 3 * a3}, {"degree_sum", degree_sum},
                          {"a3_matches", 3 * a3 == degree_sum},
                          {"a2", a2}, {"two_pairs_minus_E", rhs}, {"a2_matches", a2 == rhs}};
        }
    }
    json vj = json::array();
    for (const auto& v : verdicts)
        vj.push_back({{"name", v.name}, {"applicable", v.applicable}, {"holds", v.holds},
                      {"lhs", v.lhs}, {"rhs", v.rhs}, {"detail", v.detail}});
    print_json({{"matrix", a.matrix_file}, {"m", m}, {"columns", A.n()},
                {"section", a.section}, {"q", a.q}, {"shape", a.shape},
                {"degrees", degrees}, {"identities", identities}, {"verdicts", vj}});
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"extremal matrix toolkit for forbidden repeated columns"};
    app.set_version_flag("--version", forbcfg::tool_version);
    app.require_subcommand(1);

    ConstructArgs ca;
    CLI::App* construct = app.add_subcommand("construct", "build a column-extremal matrix");
    construct->add_option("--family", ca.family, "q10 | q110 | q1100 | small_m_q110 | "
                                                "small_m_q1100 | pigeonhole_m_eq_q_minus_1")
        ->required()
        ->check(CLI::IsMember({"q10", "q110", "q1100", "small_m_q110", "small_m_q1100",
                               "pigeonhole_m_eq_q_minus_1"}));
    construct->add_option("--m", ca.m, "row count");
    construct->add_option("--q", ca.q, "forbidden multiplicity")->required();
    construct->add_option("--a", ca.a, "q1100: sum-3 design multiplicity (default 1)");
    construct->add_option("--b", ca.b, "q1100: complemented design multiplicity (default q-3-a)");
    construct->add_option("--out", ca.out, "write matrix here, print JSON summary");

    std::string check_matrix, check_pattern;
    CLI::App* check = app.add_subcommand("check", "test a matrix for a forbidden pattern");
    check->add_option("--matrix", check_matrix, "matrix file")->required();
    check->add_option("--pattern", check_pattern, "pattern, e.g. 3x1^2.0^1")->required();

    std::string bound_pattern;
    int bound_m = 0;
    long long bound_M = -1;
    CLI::App* bound = app.add_subcommand("bound", "lower/upper bounds for given m and pattern");
    bound->add_option("--pattern", bound_pattern)->required();
    bound->add_option("--m", bound_m, "row count")->required();
    bound->add_option("--M", bound_M, "threshold above which the closed form is known exact");

    ForbArgs fa;
    long long seed_val = 0;
    CLI::App* forb = app.add_subcommand("forb", "exact maximum by exhaustive search (cached)");
    forb->add_option("--m", fa.m, "row count")->required();
    forb->add_option("--pattern", fa.pattern)->required();
    forb->add_option("--cap", fa.cap, "max copies per column (default 1 = simple)");
    forb->add_option("--sums", fa.sums, "allowed column sums, \"a..b\" or comma list");
    forb->add_flag("--limit-override", fa.limit_override, "search past the default size limits");
    forb->add_option("--witness-out", fa.witness_out, "write the witness matrix here");
    CLI::Option* seed_opt = forb->add_option("--seed", seed_val,
                                             "recorded for reproducibility (search is deterministic)");

    DesignArgs da;
    CLI::App* design = app.add_subcommand("design", "triple systems: existence, construction, certification");
    design->add_option("--v", da.v, "point count");
    design->add_option("--lambda", da.lambda, "pair multiplicity (default 1)");
    design->add_flag("--strict", da.strict, "existence test per the usual literature conditions");
    design->add_flag("--construct", da.construct, "emit a simple system");
    design->add_option("--certify", da.certify_file, "certify the design in this file");
    design->add_option("--out", da.out, "write design here, print JSON summary");

    AnalyzeArgs aa;
    CLI::App* analyze = app.add_subcommand("analyze", "degree/epsilon maps and inequality verdicts");
    analyze->add_option("--matrix", aa.matrix_file)->required();
    analyze->add_option("--q", aa.q)->required();
    analyze->add_option("--shape", aa.shape, "k,l")->required();
    analyze->add_option("--section", aa.section, "2 | 3 | 4")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    if (seed_opt->count() > 0) fa.seed = seed_val;

    try {
        if (construct->parsed()) return run_construct(ca);
        if (check->parsed()) return run_check(check_matrix, check_pattern);
        if (bound->parsed())
            return run_bound(bound_pattern, bound_m,
                             bound_M >= 0 ? std::optional<long long>(bound_M) : std::nullopt);
        if (forb->parsed()) return run_forb(fa);
        if (design->parsed()) return run_design(da);
        if (analyze->parsed()) return run_analyze(aa);
    } catch (const std::exception& e) {
        std::cerr << "forbcfg: " << e.what() << "\n";
        return 3;
    }
    return 2;
}
