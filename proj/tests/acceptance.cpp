// Acceptance runner: one PASS/FAIL line per criterion.
//
// Exit status is 0 when every failing criterion is one whose stated target is
// contradicted by exact computation (listed in kKnownConflicts and explained
// in the printed detail); any other failure exits 1.

#include "oracles.hpp"
#include "superell/census.hpp"
#include "superell/coverings.hpp"
#include "superell/densities.hpp"
#include "superell/localsolve.hpp"
#include "superell/orbits.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

using namespace superell;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

const std::set<int> kKnownConflicts = {4, 6};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt_time(double s) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2fs", s);
    return buf;
}

BinaryForm form(int n, std::vector<long> c) {
    std::vector<Int> v;
    for (long x : c) v.emplace_back(x);
    return BinaryForm(n, v);
}

Outcome table1_check() {
    const std::vector<std::pair<std::string, std::string>> printed = {
        {"75.0", "50.0"}, {"88.8", "85.1"}, {"96.0", "95.9"}, {"97.2", "69.4"},
        {"99.0", "73.9"}, {"99.7", "96.0"}, {"99.9", "72.1"}};
    auto t0 = std::chrono::steady_clock::now();
    auto t = table1();
    double el = seconds_since(t0);
    int match = 0;
    for (std::size_t i = 0; i < t.size() && i < printed.size(); ++i)
        match += (t[i].row1 == printed[i].first) + (t[i].row2 == printed[i].second);
    return {match == 14 && t.size() == 7 && el < 1.0, std::to_string(match) + "/14 values, " + fmt_time(el)};
}

Outcome group_orders() {
    Int g3 = brute_orthogonal_count(1, 3, true), f3 = group_order_G_mod_p(1, 3);
    Int g8 = brute_orthogonal_count(1, 8, false), f8 = group_order_Ghat_mod8(1);
    Int g0 = brute_orthogonal_count(0, 8, false), f0 = group_order_Ghat_mod8(0);
    bool ok = g3 == 24 && f3 == 24 && g8 == 2048 && f8 == 2048 && g0 == 4 && f0 == 4;
    return {ok, "F3 " + g3.get_str() + "/" + f3.get_str() + ", Z/8 n=1 " + g8.get_str() + "/" + f8.get_str() + ", n=0 " +
                    g0.get_str() + "/" + f0.get_str()};
}

Outcome orbit_suite() {
    std::mt19937_64 rng(2024);
    int total = 0, weier = 0, failures = 0, wd = 0;
    std::string first_fail;
    const std::vector<std::string> needed = {"determinant", "symmetric", "norm_identity", "containment"};
    auto t0 = std::chrono::steady_clock::now();
    for (int trial = 0; trial < 120; ++trial) {
        int n = 1 + trial % 3;
        bool w = trial % 4 == 0;
        auto in = oracle::random_instance(rng, n, w, n == 3 ? 3 : 4);
        PrimitiveSolution s{in.x0, in.c, in.z0};
        ++total;
        weier += w;
        bool ok = true;
        try {
            auto cert = construct_orbit(in.F, s);
            auto rep = verify_certificate(cert);
            ok = rep.all_pass();
            for (auto& name : needed) ok = ok && rep.find(name) && rep.find(name)->pass;
            std::vector<long> ks;
            for (long K = -3; K <= 3 && ks.size() < 2; ++K)
                if (admissible_K(in.F, s, Int(K))) ks.push_back(K);
            if (ks.size() == 2) {
                ++wd;
                ok = ok && welldefinedness_check(in.F, s, ks[0], ks[1]);
            }
        } catch (const std::exception& e) {
            ok = false;
            if (first_fail.empty()) first_fail = e.what();
        }
        if (!ok) {
            ++failures;
            if (first_fail.empty()) first_fail = in.F.str();
        }
    }
    double el = seconds_since(t0);
    bool pass = failures == 0 && total >= 100 && weier >= 20 && wd >= 100 && el < 300;
    return {pass, std::to_string(total) + " instances (" + std::to_string(weier) + " Weierstrass), " + std::to_string(wd) +
                      " with two admissible K, " + std::to_string(failures) + " failures, " + fmt_time(el) +
                      (first_fail.empty() ? "" : "; first: " + first_fail)};
}

Outcome condition_check() {
    auto t0 = std::chrono::steady_clock::now();
    auto d = condition_densities(3, 2, Int(3));
    double el = seconds_since(t0);
    bool a = d.cond_a == Rat(1, 9), b = d.cond_b == Rat(1, 12);
    return {a && b && el < 60,
            "cond_a " + to_string(d.cond_a) + (a ? " (=1/9)" : " (expected 1/9)") + "; cond_b " + to_string(d.cond_b) +
                " over classes mod 9, expected 1/12. Related exact values: reduction square mod 3 " + to_string(d.square_mod_p) +
                ", square given maximal " + to_string(d.square_given_maximal) +
                ". 1/12 has denominator 4, impossible for a density over 3-power many classes; " + fmt_time(el)};
}

Outcome vanish_check() {
    Rat a = vanish_density(3, 2), b = vanish_density(2, 1);
    return {a == Rat(1, 27) && b == Rat(1, 4), "(3,2) " + to_string(a) + ", (2,1) " + to_string(b)};
}

BinaryForm random_padic_form(std::mt19937_64& rng, int n, long p) {
    while (true) {
        std::vector<Int> c(2 * n + 2);
        for (auto& v : c) v = oracle::random_int(rng, -6, 6) * ipow(Int(p), oracle::random_int(rng, 0, 2).get_ui());
        BinaryForm F(n, c);
        if (F.lead() != 0 && disc(F) != 0) return F;
    }
}

Outcome local_check() {
    std::mt19937_64 rng(41);
    int cases = 0, decided = 0, disagree = 0, over_cap = 0;
    for (int n : {1, 2})
        for (long p : {2, 3, 5, 7})
            for (int t = 0; t < 25; ++t, ++cases) {
                auto F = random_padic_form(rng, n, p);
                auto r = zp_soluble(F, Int(p));
                over_cap += r.depth_used > r.depth_cap;
                if (r.soluble && !verify_local_witness(F, Int(p), *r.witness)) ++disagree;
                int k = r.depth_cap + 1;
                while (k > 1 && ipow(Int(p), k) > 60000) --k;
                int o = oracle::solubility_by_residues(F, Int(p), k);
                if (o >= 0) {
                    ++decided;
                    disagree += (o == 1) != r.soluble;
                }
            }
    auto F = form(1, {5, 2, 0, 5});
    auto at5 = zp_soluble(F, Int(5)), at7 = zp_soluble(F, Int(7));
    bool fixed = !at5.soluble && at7.soluble;
    std::string w5 = at5.witness ? " witness (" + at5.witness->x0.get_str() + "," + at5.witness->c.get_str() + "," +
                                       at5.witness->z0.get_str() + ")"
                                 : "";
    return {disagree == 0 && over_cap == 0 && fixed,
            std::to_string(cases) + " forms, " + std::to_string(decided) + " decided by residues, " + std::to_string(disagree) +
                " disagreements; 5x^3+2x^2z+5z^3: p=5 " + (at5.soluble ? "soluble" : "insoluble") + w5 + " (expected insoluble), p=7 " +
                (at7.soluble ? "soluble" : "insoluble") + ". F(1,1)=12 is a 5-adic unit, so the unit twist gives an integer point"};
}

Outcome factor_check() {
    int bad = 0, checked = 0;
    for (std::uint64_t p : {2, 3})
        for (int deg = 1; deg <= 5; ++deg) {
            std::vector<Int> brute(deg + 1, Int(0));
            for (auto& f : oracle::monic_polys(p, deg)) brute[oracle::distinct_factor_count(f, p)] += 1;
            Int total = 0;
            for (int m = 0; m <= deg; ++m) {
                ++checked;
                Int c = count_factor_classes(p, deg, m);
                bad += c != brute[m];
                total += c;
            }
            bad += total != ipow(Int(static_cast<unsigned long>(p)), deg);
        }
    return {bad == 0, std::to_string(checked) + " (p,deg,m) cells, " + std::to_string(bad) + " mismatches"};
}

Outcome bound_check() {
    Rat r5 = refined_delta_max(5), r6 = refined_delta_max(6);
    bool coarse = true;
    for (int n = 8; n <= 40; ++n) coarse = coarse && coarse_delta_max(n) == rpow(Rat(2), 7 - n) && coarse_delta_max(n) < 1;
    bool c10 = coarse_delta(10, 1) == Rat(1, 2);
    char buf[160];
    std::snprintf(buf, sizeof buf, "refined n=5 %.4f, n=6 %.4f; 2^{7-n} for n=8..40 %s; coarse(10,1) = %s", r5.get_d(), r6.get_d(),
                  coarse ? "ok" : "wrong", to_string(coarse_delta(10, 1)).c_str());
    return {r5 < 1 && r6 < 1 && coarse && c10, buf};
}

Outcome chain_check() {
    bool ok = true;
    std::string d;
    for (auto [p, n] : std::vector<std::pair<std::uint64_t, int>>{{3, 20}, {5, 30}, {7, 50}}) {
        auto c = lemma55_chain_check(p, n);
        ok = ok && c.ok;
        char buf[96];
        std::snprintf(buf, sizeof buf, "(%lu,%d) %.3f <= %.3f", static_cast<unsigned long>(p), n, c.lhs.get_d(),
                      std::sqrt(c.rhs_sq.get_d()));
        d += (d.empty() ? "" : "; ") + std::string(buf);
    }
    return {ok, d};
}

Outcome covering_check() {
    auto s = make_rat_spec({Rat(0), Rat(1), Rat(2)}, {Rat(1), Rat(1), Rat(1)});
    auto gens = covering_ideal(s);
    bool rel = gens.size() == 1 && gens[0].coeffs == std::vector<Rat>{Rat(1), Rat(-2), Rat(1)};
    auto fc = fiber_census(make_fp_spec(7, {0, 1, 2}, {1, 1, 1}));
    bool fib = fc.total == 8 && fc.max_fiber <= 4 && fc.max_branch_fiber <= 2;
    std::mt19937_64 rng(64);
    int lifted = 0, weier = 0;
    for (int it = 0; it < 20; ++it) {
        int n = 1 + it % 3, N = 2 * n + 1;
        std::vector<Int> roots;
        std::set<long> seen;
        while (static_cast<int>(roots.size()) < N) {
            long r = oracle::random_int(rng, -8, 8).get_si();
            if (seen.insert(r).second) roots.emplace_back(r);
        }
        Int x0, z0, f0;
        if (it % 4 == 0) {
            x0 = roots[rng() % N];
            z0 = 1;
            f0 = oracle::random_int(rng, 1, 9);
        } else {
            do {
                x0 = oracle::random_int(rng, -9, 9);
                z0 = oracle::random_int(rng, 1, 5);
            } while (gcd(x0, z0) != 1 ||
                     std::any_of(roots.begin(), roots.end(), [&](const Int& t) { return x0 == t * z0; }));
            f0 = 1;
            for (auto& t : roots) f0 *= x0 - t * z0;
        }
        auto sc = solution_covering(f0, roots, x0, z0);
        weier += sc.weierstrass;
        auto v = pi_delta_eval(sc.spec, sc.base_point);
        lifted += v.first == Rat(x0, z0) && v.second == 1;
    }
    return {rel && fib && lifted == 20,
            std::string("relation ") + (rel ? "Z1^2-2Z2^2+Z3^2" : "wrong") + "; #C(F7)=" + std::to_string(fc.total) +
                ", max fiber " + std::to_string(fc.max_fiber) + ", max branch fiber " + std::to_string(fc.max_branch_fiber) +
                "; base point lifts " + std::to_string(lifted) + "/20 (" + std::to_string(weier) + " Weierstrass)"};
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Outcome census_check() {
    auto t0 = std::chrono::steady_clock::now();
    namespace fs = std::filesystem;
    auto dir = fs::temp_directory_path() / ("superell_acceptance_" + std::to_string(::getpid()));
    fs::create_directories(dir);
    CensusOptions o;
    o.n = 2;
    o.f0 = 3;
    o.X = ipow(Int(10), 10);
    auto full = (dir / "full.jsonl").string(), part = (dir / "part.jsonl").string();
    run_census_to_file(o, full, false);
    auto whole = load_records(full);  // re-verifies every record

    std::vector<std::vector<CensusRecord>> parts;
    auto so = o;
    so.shards = 4;
    for (std::uint64_t s = 0; s < 4; ++s) {
        so.shard = s;
        parts.push_back(run_census(so));
    }
    auto merged = merge_records(parts);
    bool shard_eq = merged == whole;

    auto io = o;
    io.max_records = 6000;
    run_census_to_file(io, part, false);
    auto torn = slurp(part);
    fs::resize_file(part, torn.size() - 40);
    auto res = run_census_to_file(o, part, true);
    bool resume_eq = slurp(part) == slurp(full);
    auto s1 = summary_json(summarize(2, Int(3), o.X, whole)), s2 = summary_json(summarize(2, Int(3), o.X, load_records(part)));
    bool summary_eq = s1 == s2;
    int inconsistent = 0;
    for (auto& r : whole) {
        try {
            check_record(r);
        } catch (const InternalError&) {
            ++inconsistent;
        }
    }
    auto sum = summarize(2, Int(3), o.X, whole);
    fs::remove_all(dir);
    double el = seconds_since(t0);
    bool ok = whole.size() >= 10000 && shard_eq && resume_eq && summary_eq && inconsistent == 0 && el < 600;
    return {ok, std::to_string(whole.size()) + " forms; 4-shard merge " + (shard_eq ? "equal" : "DIFFERENT") + "; resume after " +
                    std::to_string(res.resumed) + " records " + (resume_eq ? "byte-identical" : "DIFFERENT") + ", summary " +
                    (summary_eq ? "identical" : "DIFFERENT") + "; " + std::to_string(inconsistent) + " inconsistent; classes " +
                    std::to_string(sum.insoluble_local) + "/" + std::to_string(sum.soluble_witnessed) + "/" +
                    std::to_string(sum.unknown) + "; " + fmt_time(el)};
}

}  // namespace

int main() {
    std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"table 1 reproduction", table1_check},
        {"group-order oracles", group_orders},
        {"orbit construction suite", orbit_suite},
        {"local condition densities at (3,2)", condition_check},
        {"vanishing density", vanish_check},
        {"local solver equivalence", local_check},
        {"factor-count statistics", factor_check},
        {"bound assembly", bound_check},
        {"chain inequality", chain_check},
        {"covering checks", covering_check},
        {"census determinism", census_check},
    };
    int unexpected = 0, failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        int id = static_cast<int>(i) + 1;
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        std::cout << (o.pass ? "PASS" : "FAIL") << " " << id << " " << criteria[i].first << ": " << o.detail;
        if (!o.pass && kKnownConflicts.count(id)) std::cout << " [stated target contradicted by exact computation]";
        std::cout << std::endl;
        if (!o.pass) {
            ++failed;
            unexpected += !kKnownConflicts.count(id);
        }
    }
    std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria pass";
    if (failed) std::cout << "; " << (failed - unexpected) << " failing criteria have stated targets contradicted by exact computation";
    std::cout << std::endl;
    return unexpected == 0 ? 0 : 1;
}
