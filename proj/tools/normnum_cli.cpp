// Command-line surface: cover construction and audit, polynomial
// enumeration, digit emission, discrepancy reporting, constant tables and
// the truncated-minimum search.
//
// Exit codes: 0 success, 2 enumeration budget exhausted, 1 invariant
// violation or bad input. All randomized audits derive from --seed through
// SplitMix64; identical invocations produce byte-identical output.

#include "normnum/json_io.hpp"
#include "normnum/normnum.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace normnum;

json rat_pair(const Rat& q) { return rat_to_json(q); }

json enclosure_json(const Enclosure& e) {
    json j;
    j["lo"] = rat_pair(e.lo);
    j["hi"] = rat_pair(e.hi);
    j["lo_float"] = to_double(e.lo);
    j["hi_float"] = to_double(e.hi);
    return j;
}

json poly_json(const IntPolynomial& p) {
    json coeffs = json::array();
    for (const auto& a : p.coeffs()) {
        if (!a.fits_slong_p()) throw std::invalid_argument("coefficient too large for JSON");
        coeffs.push_back(a.get_si());
    }
    json j;
    j["coeffs"] = coeffs;
    if (p.offset() != 0) j["offset"] = rat_pair(p.offset());
    return j;
}

IntPolynomial poly_from_json(const json& j) {
    std::vector<Int> coeffs;
    for (const auto& c : j.at("coeffs")) coeffs.emplace_back(c.get<long long>());
    Rat offset = j.contains("offset") ? rat_from_json(j["offset"]) : Rat(0);
    return IntPolynomial(std::move(coeffs), std::move(offset));
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open file: " + path);
    json j;
    in >> j;
    return j;
}

void emit(const std::string& out_path, const std::string& text) {
    if (out_path.empty() || out_path == "-") {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << '\n';
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw std::invalid_argument("cannot open output file: " + out_path);
    out << text;
    if (!text.empty() && text.back() != '\n') out << '\n';
}

std::vector<long> parse_base_list(const std::string& text) {
    std::vector<long> bases;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        size_t pos = 0;
        long b = std::stol(item, &pos);
        if (pos != item.size() || b < 2) throw std::invalid_argument("bad base list entry: " + item);
        bases.push_back(b);
    }
    if (bases.empty()) throw std::invalid_argument("empty base list");
    return bases;
}

struct GlobalOpts {
    std::uint64_t seed = 1;
    std::string ceiling = "16777216";  // 2^24
    std::string output;
    std::string format = "json";

    Int ceiling_int() const { return Int(ceiling); }
};

// --- digits ---------------------------------------------------------------

int cmd_digits(const GlobalOpts& g, const std::string& cover_spec, long iterations,
               const std::string& bases_text, const std::string& epsilon_text, size_t k_max,
               long b_max, long m_max, long n_max) {
    Rat epsilon = parse_rat(epsilon_text);
    std::vector<long> bases = parse_base_list(bases_text);
    std::unique_ptr<MeasurableCover> cover;
    auto colon = cover_spec.find(':');
    std::string kind = cover_spec.substr(0, colon);
    std::string arg = colon == std::string::npos ? "" : cover_spec.substr(colon + 1);
    if (kind == "synthetic") {
        cover = std::make_unique<ExactUnionCover>(union_from_json(load_json_file(arg)));
    } else if (kind == "sierpinski") {
        TruncationBudget budget;
        budget.b_max = b_max;
        budget.m_max = m_max;
        budget.n_length_max = [n_max](long, long) { return n_max; };
        budget.atom_ceiling = g.ceiling_int();
        cover = std::make_unique<ChunkedPolyCover>(
            assemble_truncated_cover(parse_rat(arg), k_max, budget));
    } else if (kind == "chunks") {
        std::vector<CoverChunk> chunks;
        for (const auto& cj : load_json_file(arg)) {
            chunks.push_back(CoverChunk{poly_from_json(cj), union_from_json(cj.at("set")),
                                        cj.contains("radius") ? rat_from_json(cj["radius"]) : Rat(0),
                                        cj.contains("tail") ? rat_from_json(cj["tail"]) : Rat(0)});
        }
        cover = std::make_unique<ChunkedPolyCover>(std::move(chunks));
    } else {
        throw std::invalid_argument("unknown cover spec '" + cover_spec +
                                    "' (expected synthetic:FILE, sierpinski:R or chunks:FILE)");
    }
    RunReport report = run_decision_tree(*cover, iterations, epsilon, bases);
    json j;
    j["state"] = {{"step", report.state.step},
                  {"d", report.state.d.get_str()},
                  {"cell_denominator", factorial(report.state.step + 1).get_str()},
                  {"slack", rat_pair(report.state.slack)},
                  {"certificate", rat_pair(report.state.certificate)}};
    json digits = json::object();
    for (const auto& [b, s] : report.digits) digits[std::to_string(b)] = s;
    j["digits"] = digits;
    json per_step = json::array();
    for (const auto& st : report.trail) per_step.push_back(rat_pair(st.certificate));
    j["certificates"] = {{"initial_bound", rat_pair(report.initial_bound)},
                         {"per_step", per_step},
                         {"tail_residual", rat_pair(report.tail_residual)},
                         {"residual_within_slack", report.residual_within_slack}};
    emit(g.output, json(j).dump(2));
    return 0;
}

// --- cover ----------------------------------------------------------------

int cmd_cover(const GlobalOpts& g, const std::string& r_text, size_t k_max, long b_max, long m_max,
              long n_max, const std::string& atom_text) {
    if (!atom_text.empty()) {
        std::stringstream ss(atom_text);
        std::string part;
        std::vector<long> v;
        while (std::getline(ss, part, ',')) v.push_back(std::stol(part));
        if (v.size() != 4) throw std::invalid_argument("--atom expects b,m,n,d");
        IntervalUnion atom = build_atom({v[0], v[1], v[2], v[3]}, g.ceiling_int());
        json j;
        j["params"] = {{"base", v[0]}, {"fluct", v[1]}, {"length", v[2]}, {"digit", v[3]}};
        j["intervals"] = atom.size();
        j["measure"] = rat_pair(atom.measure());
        j["measure_bound"] = rat_pair(atom_bound(v[0], v[1], v[2]));
        emit(g.output, json(j).dump(2));
        return 0;
    }
    Rat r = parse_rat(r_text);
    TruncationBudget budget;
    budget.b_max = b_max;
    budget.m_max = m_max;
    budget.n_length_max = [n_max](long, long) { return n_max; };
    budget.atom_ceiling = g.ceiling_int();
    auto chunks = assemble_truncated_cover(r, k_max, budget);
    json arr = json::array();
    for (size_t k = 0; k < chunks.size(); ++k) {
        const auto& c = chunks[k];
        json cj;
        cj["index"] = k + 1;
        cj["poly"] = c.poly.to_string();
        cj["degree"] = c.poly.degree();
        cj["radius"] = rat_pair(c.radius);
        cj["intervals"] = c.set.size();
        cj["measure"] = rat_pair(c.set.measure());
        cj["tail_bound"] = rat_pair(c.tail_bound);
        arr.push_back(cj);
    }
    Rat cert = cover_certificate(chunks);
    json j;
    j["chunks"] = arr;
    j["certified_total"] = rat_pair(cert);
    j["certified_total_float"] = to_double(cert);
    j["target"] = rat_pair(r);
    j["certified_below_target"] = cert < r;
    emit(g.output, json(j).dump(2));
    return 0;
}

// --- order ----------------------------------------------------------------

int cmd_order(const GlobalOpts& g, size_t count) {
    json arr = json::array();
    for (const auto& p : enumerate_prefix(count)) arr.push_back(p.to_string());
    json j;
    j["count"] = count;
    j["polynomials"] = arr;
    emit(g.output, json(j).dump(2));
    return 0;
}

// --- stretch-audit ----------------------------------------------------------

int cmd_stretch_audit(const GlobalOpts& g, size_t count, long precision) {
    SplitMix64 rng(g.seed);
    std::vector<IntPolynomial> polys = {IntPolynomial({0, 1}), IntPolynomial({0, 0, 1}),
                                        IntPolynomial({1, 2})};
    size_t violations = 0;
    double worst_ratio = 0;
    Rat tol = pow2(-precision);
    for (const auto& p : polys) {
        Rat reach = Rat(p.lipschitz()) + 1;
        for (size_t i = 0; i < count; ++i) {
            Rat lo = rng.in_range(-reach, reach);
            Rat len = rng.in_range(Rat(0), rat(1, 4));
            if (len == 0) len = rat(1, 1024);
            Interval target(lo, Rat(lo + len));
            Rat measured = preimage_dyadic(p, target, precision).measure() + tol;
            Rat bound = stretch_bound(p, len);
            if (measured > bound) ++violations;
            double ratio = to_double(measured) / to_double(bound);
            if (ratio > worst_ratio) worst_ratio = ratio;
        }
    }
    json j;
    j["seed"] = g.seed;
    j["intervals_per_poly"] = count;
    j["precision"] = precision;
    j["violations"] = violations;
    j["worst_ratio"] = worst_ratio;
    emit(g.output, json(j).dump(2));
    return violations == 0 ? 0 : 1;
}

// --- discrepancy ------------------------------------------------------------

int cmd_discrepancy(const GlobalOpts& g, const std::string& x_text,
                    const std::string& digit_file, long base, long points) {
    Rat x;
    if (!digit_file.empty()) {
        std::ifstream in(digit_file);
        if (!in) throw std::invalid_argument("cannot open digit file: " + digit_file);
        std::string digits;
        in >> digits;
        Int num = 0;
        for (char c : digits) {
            if (c < '0' || c - '0' >= base) throw std::invalid_argument("bad digit in file");
            num = num * base + (c - '0');
        }
        x = rat(num, int_pow(Int(base), digits.size()));
    } else {
        x = parse_rat(x_text);
    }
    auto pts = orbit_points(x, base, static_cast<size_t>(points));
    std::vector<std::pair<long, Rat>> rows;
    for (long n = 1; n <= points; n *= 2)
        rows.emplace_back(n, extreme_discrepancy({pts.begin(), pts.begin() + n}));
    if (rows.back().first != points)
        rows.emplace_back(points, extreme_discrepancy(pts));
    auto ratio = [](long n, const Rat& d) -> double {
        if (n < 3) return 0.0;
        return std::sqrt(double(n)) * to_double(d) / std::sqrt(std::log(std::log(double(n))));
    };
    if (g.format == "csv") {
        std::ostringstream out;
        out << "N,discrepancy,discrepancy_float,lil_ratio\n";
        for (const auto& [n, d] : rows) {
            out << n << "," << to_string(d) << "," << to_double(d) << ",";
            if (n >= 3) out << ratio(n, d);
            out << "\n";
        }
        emit(g.output, out.str());
    } else {
        json arr = json::array();
        for (const auto& [n, d] : rows) {
            json row;
            row["N"] = n;
            row["discrepancy"] = rat_pair(d);
            row["discrepancy_float"] = to_double(d);
            if (n >= 3) row["lil_ratio"] = ratio(n, d);
            arr.push_back(row);
        }
        json j;
        j["base"] = base;
        j["x"] = rat_pair(x);
        j["rows"] = arr;
        emit(g.output, json(j).dump(2));
    }
    return 0;
}

// --- lil-constants ----------------------------------------------------------

int cmd_lil_constants(const GlobalOpts& g, long base, long level, const std::string& qa_text,
                      const std::string& qb_text, long m_mult, const std::string& r_text,
                      long blocks) {
    Rat r = parse_rat(r_text);
    LilParams params = lil_params(base, level, r, Int(blocks));
    json j;
    j["base"] = base;
    j["L_b"] = enclosure_json(params.l_constant);
    j["L_b"]["exact"] = params.l_constant.is_exact();
    BadicPair pair(base, level, Int(qa_text), Int(qb_text));
    j["pair"] = {{"level", level}, {"qa", qa_text}, {"qb", qb_text}};
    Rat sig_m = sigma_sq_exact(pair, m_mult);
    Rat sig_inf = sigma_sq_exact(pair, std::nullopt);
    j["sigma_sq"] = {{"M", m_mult},
                     {"at_M", rat_pair(sig_m)},
                     {"infinity", rat_pair(sig_inf)},
                     {"infinity_float", to_double(sig_inf)}};
    if (sig_m > 0) {
        Int lm = Int(level) * Int(m_mult);
        RwParams rw{rat(1, m_mult), Rat(lm) * sig_m, Rat(lm), Int(blocks)};
        RwThresholds thr = rw_thresholds(rw);
        RwTails tails = rw_tails(rw);
        j["rw"] = {{"delta", rat_pair(rw.delta)},
                   {"A_delta", rat_pair(thr.a_delta)},
                   {"A_delta_float", to_double(thr.a_delta)},
                   {"A_prime", rat_pair(thr.a_prime)},
                   {"up_tail", rat_pair(tails.up)},
                   {"low_tail", rat_pair(tails.low)}};
        Int scale = find_block_scale(r, m_mult, pair);
        j["block_scale"] = scale.get_str();
    }
    j["philipp"] = {{"C_P", params.philipp.c_p},
                    {"H", params.philipp.h_levels},
                    {"n_L", params.philipp.n_l.get_str()},
                    {"delta_1", rat_pair(params.philipp.delta(1))},
                    {"delta_hat_1", rat_pair(params.philipp.delta_hat(1))}};
    json plan_json = json::array();
    RadiusPlan plan = radius_plan(base, r, 3);
    for (const auto& [tag, share] : plan.entries)
        plan_json.push_back(json{{"tag", tag}, {"radius", rat_pair(share)}});
    j["radius_plan"] = {{"entries", plan_json},
                        {"total", rat_pair(plan.total)},
                        {"certified_below_r", plan.certified}};
    emit(g.output, json(j).dump(2));
    return 0;
}

// --- sierpinski-min ---------------------------------------------------------

int cmd_sierpinski_min(const GlobalOpts& g, const std::string& chunks_file, int demo,
                       long precision, long node_budget) {
    std::vector<std::pair<IntPolynomial, IntervalUnion>> chunks;
    if (!chunks_file.empty()) {
        for (const auto& cj : load_json_file(chunks_file))
            chunks.emplace_back(poly_from_json(cj), union_from_json(cj.at("set")));
    } else {
        IntervalUnion quarter = IntervalUnion::normalize({Interval(Rat(0), rat(1, 4))});
        switch (demo) {
            case 1:
                chunks.emplace_back(IntPolynomial({1}), quarter);
                break;
            case 2:
                chunks.emplace_back(IntPolynomial({0, 1}), quarter);
                break;
            case 3:
                chunks.emplace_back(IntPolynomial({1}), quarter);
                chunks.emplace_back(IntPolynomial({2}),
                                    IntervalUnion::normalize({Interval(rat(1, 4), rat(3, 4))}));
                break;
            default:
                throw std::invalid_argument("need --chunks FILE or --demo 1|2|3");
        }
    }
    MinEnclosure e = min_outside_enclosure(chunks, precision, node_budget);
    json j;
    j["status"] = e.status == MinEnclosure::Status::Enclosed ? "enclosed" : "unknown";
    j["lo"] = rat_pair(e.lo);
    j["hi"] = rat_pair(e.hi);
    j["width_float"] = to_double(e.hi - e.lo);
    emit(g.output, json(j).dump(2));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact Sierpinski-cover toolkit: cover assembly, polynomial enumeration, "
                 "digit emission and discrepancy reports"};
    app.require_subcommand(1);

    GlobalOpts g;
    app.add_option("--seed", g.seed, "seed for every randomized audit (SplitMix64)");
    app.add_option("--budget-ceiling", g.ceiling, "cap on b^n enumerations")
        ->envname("NORMNUM_BUDGET_CEILING");
    app.add_option("--output", g.output, "output path (default stdout)");
    app.add_option("--format", g.format, "json or csv (discrepancy only)")
        ->check(CLI::IsMember({"json", "csv"}));

    auto* digits_cmd = app.add_subcommand("digits", "run the decision tree and emit digits");
    std::string cover_spec;
    long iterations = 6;
    std::string bases_text = "2,3,6";
    std::string epsilon_text = "1/4";
    size_t k_max = 4;
    long b_max = 4, m_max = 4, n_max = 0;
    digits_cmd->add_option("--cover", cover_spec, "synthetic:FILE | sierpinski:R | chunks:FILE")
        ->required();
    digits_cmd->add_option("--iterations", iterations, "decision-tree steps");
    digits_cmd->add_option("--bases", bases_text, "comma-separated digit bases");
    digits_cmd->add_option("--epsilon", epsilon_text, "slack certificate p/q");
    digits_cmd->add_option("--k-max", k_max, "polynomial count for sierpinski covers");
    digits_cmd->add_option("--b-max", b_max, "base budget for sierpinski covers");
    digits_cmd->add_option("--m-max", m_max, "fluctuation budget for sierpinski covers");
    digits_cmd->add_option("--n-max", n_max, "length budget for sierpinski covers");

    auto* cover_cmd = app.add_subcommand("cover", "assemble a truncated cover and report chunks");
    std::string r_text = "1/2";
    std::string atom_text;
    cover_cmd->add_option("--r", r_text, "target cover measure p/q");
    cover_cmd->add_option("--k-max", k_max, "polynomial count");
    cover_cmd->add_option("--b-max", b_max, "largest base to build");
    cover_cmd->add_option("--m-max", m_max, "largest fluctuation level to build");
    cover_cmd->add_option("--n-max", n_max, "largest expansion length to build");
    cover_cmd->add_option("--atom", atom_text, "build one atom b,m,n,d instead");

    auto* order_cmd = app.add_subcommand("order", "list the polynomial enumeration");
    size_t order_count = 10;
    order_cmd->add_option("--count", order_count, "how many polynomials");

    auto* audit_cmd = app.add_subcommand("stretch-audit", "preimage measure vs. stretch bound");
    size_t audit_count = 1000;
    long audit_precision = 20;
    audit_cmd->add_option("--count", audit_count, "intervals per polynomial");
    audit_cmd->add_option("--precision", audit_precision, "dyadic preimage precision");

    auto* disc_cmd = app.add_subcommand("discrepancy", "exact discrepancy table for an orbit");
    std::string x_text = "1/3";
    std::string digit_file;
    long disc_base = 2;
    long disc_points = 1024;
    disc_cmd->add_option("--x", x_text, "rational p/q");
    disc_cmd->add_option("--digit-file", digit_file, "file with base-b digits of x");
    disc_cmd->add_option("--base", disc_base, "orbit base");
    disc_cmd->add_option("--points", disc_points, "orbit length");

    auto* lil_cmd = app.add_subcommand("lil-constants", "constant tables for one base");
    long lil_base = 2, lil_level = 1, lil_m = 4, lil_blocks = 16;
    std::string qa_text = "0", qb_text = "1", lil_r = "1/2";
    lil_cmd->add_option("--base", lil_base, "base b >= 2");
    lil_cmd->add_option("--level", lil_level, "b-adic level L");
    lil_cmd->add_option("--qa", qa_text, "left endpoint numerator");
    lil_cmd->add_option("--qb", qb_text, "right endpoint numerator");
    lil_cmd->add_option("--m-mult", lil_m, "block multiplier M");
    lil_cmd->add_option("--r", lil_r, "cover budget p/q");
    lil_cmd->add_option("--blocks", lil_blocks, "N for H(N) and tail starts");

    auto* min_cmd = app.add_subcommand("sierpinski-min", "enclose the first uncovered point");
    std::string chunks_file;
    int demo = 0;
    long min_precision = 16;
    long node_budget = 200000;
    min_cmd->add_option("--chunks", chunks_file, "JSON chunk list");
    min_cmd->add_option("--demo", demo, "built-in demo chunk set 1|2|3");
    min_cmd->add_option("--precision", min_precision, "enclosure width exponent");
    min_cmd->add_option("--node-budget", node_budget, "coverage node budget");

    try {
        app.parse(argc, argv);
        if (*digits_cmd)
            return cmd_digits(g, cover_spec, iterations, bases_text, epsilon_text, k_max, b_max,
                              m_max, n_max);
        if (*cover_cmd) return cmd_cover(g, r_text, k_max, b_max, m_max, n_max, atom_text);
        if (*order_cmd) return cmd_order(g, order_count);
        if (*audit_cmd) return cmd_stretch_audit(g, audit_count, audit_precision);
        if (*disc_cmd) return cmd_discrepancy(g, x_text, digit_file, disc_base, disc_points);
        if (*lil_cmd)
            return cmd_lil_constants(g, lil_base, lil_level, qa_text, qb_text, lil_m, lil_r,
                                     lil_blocks);
        if (*min_cmd) return cmd_sierpinski_min(g, chunks_file, demo, min_precision, node_budget);
        return 1;
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    } catch (const normnum::BudgetExceeded& e) {
        std::cerr << "budget exhausted: " << e.what() << " (certified bound "
                  << normnum::to_string(e.bound()) << ")\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
