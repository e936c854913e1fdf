// superell: command-line front end.
//
// Exit codes: 0 success, 2 usage or precondition errors, 1 internal errors.

#include "superell/census.hpp"
#include "superell/coverings.hpp"
#include "superell/densities.hpp"
#include "superell/forms.hpp"
#include "superell/localsolve.hpp"
#include "superell/orbits.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace superell;
using ojson = nlohmann::ordered_json;

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep)) out.push_back(cur);
    if (!s.empty() && s.back() == sep) out.emplace_back();
    return out;
}

// Accepts 123, -5 and powers written b^e.
Int parse_big(const std::string& s) {
    auto caret = s.find('^');
    if (caret == std::string::npos) return parse_int(s);
    Int b = parse_int(s.substr(0, caret)), e = parse_int(s.substr(caret + 1));
    require(e >= 0 && e <= 4096, "exponent out of range: " + s);
    return ipow(b, e.get_ui());
}

Rat parse_rat(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rat(parse_int(s));
    Int num = parse_int(s.substr(0, slash)), den = parse_int(s.substr(slash + 1));
    require(den != 0, "zero denominator: " + s);
    Rat r(num, den);
    r.canonicalize();
    return r;
}

std::vector<Int> parse_int_list(const std::string& s) {
    std::vector<Int> out;
    for (auto& t : split(s, ',')) out.push_back(parse_int(t));
    return out;
}

std::uint64_t parse_u64(const Int& a, const std::string& what) {
    require(a >= 0 && a.fits_ulong_p(), what + " out of range");
    return a.get_ui();
}

ojson rat_json(const Rat& r) { return to_string(r); }
ojson int_json(const Int& a) { return a.get_str(); }

ojson int_matrix(const IntMat& m) {
    ojson rows = ojson::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        ojson row = ojson::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j).get_str());
        rows.push_back(row);
    }
    return rows;
}

ojson rat_vector(const std::vector<Rat>& v) {
    ojson a = ojson::array();
    for (auto& x : v) a.push_back(to_string(x));
    return a;
}

void emit(const ojson& j, bool json) {
    if (json) {
        std::cout << j.dump(2) << "\n";
        return;
    }
    for (auto it = j.begin(); it != j.end(); ++it) {
        const auto& v = it.value();
        std::cout << it.key() << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
    }
}

// ---- subcommands ---------------------------------------------------------

ojson cmd_monicize(const std::string& enc) {
    auto F = BinaryForm::decode(enc);
    return ojson{{"form", F.encode()}, {"monicized", monicize(F).encode()}};
}

ojson cmd_height(const std::string& enc, const std::string& X) {
    auto F = BinaryForm::decode(enc);
    int n = F.n;
    long k = 2L * n * (2 * n + 1);
    ojson terms = ojson::array();
    double logH = -INFINITY;
    Int pw = 1;
    for (int i = 1; i <= 2 * n + 1; ++i) {
        Int a = abs(pw * F[i]);
        Rat e(k, i);
        e.canonicalize();
        terms.push_back(ojson{{"i", i}, {"base", a.get_str()}, {"exponent", to_string(e)}});
        if (a != 0) logH = std::max(logH, std::log(a.get_d()) * static_cast<double>(k) / i);
        pw *= F.lead();
    }
    ojson j{{"form", F.encode()}, {"terms", terms}, {"height_approx", logH == -INFINITY ? 0.0 : std::exp(logH)}};
    if (!X.empty()) {
        Int x = parse_big(X);
        j["X"] = x.get_str();
        j["height_less_than"] = height_less_than(F, x);
    }
    return j;
}

ojson cmd_orbit(const std::string& enc, const std::string& sol, long K) {
    auto F = BinaryForm::decode(enc);
    auto v = parse_int_list(sol);
    require(v.size() == 3, "--solution must be x0,c,z0");
    PrimitiveSolution s{v[0], v[1], v[2]};
    OrbitOptions opt;
    if (K != 0) opt.K = K;
    auto cert = construct_orbit(F, s, opt);
    auto rep = verify_certificate(cert);
    ojson checks = ojson::array();
    for (auto& c : rep.items) checks.push_back(ojson{{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
    ojson basis = ojson::array();
    for (auto& b : cert.ideal_I.basis_elements()) basis.push_back(rat_vector(b.zeta_coords()));
    ojson dist{{"status", to_string(cert.distinguished.status)}, {"reason", cert.distinguished.reason}};
    if (cert.distinguished.prime) dist["prime"] = *cert.distinguished.prime;
    return ojson{{"form", F.encode()},
                 {"solution", s.str()},
                 {"gamma", ojson::array({ojson::array({int_json(cert.gamma.a), int_json(cert.gamma.b)}),
                                         ojson::array({int_json(cert.gamma.c), int_json(cert.gamma.d)})})},
                 {"K", cert.K_used.get_str()},
                 {"transformed", cert.transformed.encode()},
                 {"ideal_basis_zeta", basis},
                 {"ideal_norm", to_string(cert.ideal_I.norm())},
                 {"delta_zeta", rat_vector(cert.delta.zeta_coords())},
                 {"A", int_matrix(cert.pair.A)},
                 {"B", int_matrix(cert.pair.B)},
                 {"det_sign", cert.det_sign},
                 {"distinguished", dist},
                 {"checks", checks},
                 {"all_pass", rep.all_pass()}};
}

ojson local_json(const BinaryForm& F, const LocalReport& r) {
    ojson j{{"p", r.p.get_str()}, {"soluble", r.soluble}, {"depth_used", r.depth_used}, {"depth_cap", r.depth_cap}, {"nodes", r.nodes}};
    if (r.witness) {
        auto& w = *r.witness;
        j["witness"] = ojson{{"kind", w.kind}, {"x0", w.x0.get_str()}, {"c", w.c.get_str()}, {"z0", w.z0.get_str()}, {"chart", w.chart}};
        j["witness_verified"] = verify_local_witness(F, r.p, w);
    }
    return j;
}

ojson cmd_local(const std::string& enc, const std::string& p, bool all, std::uint64_t budget) {
    auto F = BinaryForm::decode(enc);
    if (!all) {
        require(!p.empty(), "local: give --p or --all");
        return local_json(F, zp_soluble(F, parse_int(p)));
    }
    auto rep = everywhere_local(F, budget);
    ojson checked = ojson::array(), failing = ojson::array(), flags = ojson::array();
    for (auto& r : rep.checked) checked.push_back(local_json(F, r));
    for (auto& q : rep.failing) failing.push_back(q.get_str());
    for (auto& q : rep.vanish_flags) flags.push_back(q.get_str());
    return ojson{{"form", F.encode()},
                 {"soluble", rep.soluble},
                 {"real", ojson{{"soluble", rep.real.soluble}, {"x0", rep.real.x0.get_str()}, {"c", rep.real.c.get_str()}, {"z0", rep.real.z0.get_str()}}},
                 {"checked_bound", rep.checked_bound.get_str()},
                 {"asserted_rule", rep.asserted_rule},
                 {"failing", failing},
                 {"vanish_flags", flags},
                 {"checked", checked}};
}

ojson cmd_density(const std::string& f0s, int n, std::uint64_t mc, std::uint64_t seed) {
    auto d = density_report(parse_int(f0s), n);
    ojson j{{"f0", d.f0.get_str()},
            {"n", n},
            {"mu", rat_json(d.mu)},
            {"mu_prime", rat_json(d.mu_prime)},
            {"one_minus_mu", rat_json(d.one_minus_mu)},
            {"mu_prime_minus_mu", rat_json(d.mu_prime_minus_mu)},
            {"one_minus_mu_percent", percent_floor_tenths(d.one_minus_mu)},
            {"mu_prime_minus_mu_percent", percent_floor_tenths(d.mu_prime_minus_mu)}};
    if (mc > 0) {
        auto est = mc_real_root_distribution(n, mc, seed);
        j["real_roots_samples"] = est.samples;
        j["real_roots_seed"] = seed;
        j["real_roots_mu"] = est.mu;
        j["real_roots_stderr"] = est.stderr_;
    }
    return j;
}

void cmd_table1(bool json) {
    auto cols = table1();
    if (json) {
        ojson a = ojson::array();
        for (auto& c : cols)
            a.push_back(ojson{{"primes", c.primes},
                              {"one_minus_mu", c.row1},
                              {"mu_prime_minus_mu", c.row2},
                              {"one_minus_mu_exact", rat_json(c.lim_one_minus_mu)},
                              {"mu_prime_minus_mu_exact", rat_json(c.lim_mu_prime_minus_mu)}});
        std::cout << a.dump(2) << "\n";
        return;
    }
    std::cout << "primes,one_minus_mu_percent,mu_prime_minus_mu_percent\n";
    for (auto& c : cols) {
        std::string ps;
        for (auto p : c.primes) ps += (ps.empty() ? "" : " ") + std::to_string(p);
        std::cout << "{" << ps << "}," << c.row1 << "," << c.row2 << "\n";
    }
}

void cmd_factorstats(std::uint64_t p, int deg, bool json) {
    require(p >= 2 && is_prime(p), "factorstats: --p must be prime");
    require(deg >= 1 && deg <= 64, "factorstats: --deg must be in [1, 64]");
    auto counts = factor_class_counts(p, deg);
    Int total = 0;
    for (auto& c : counts) total += c;
    if (json) {
        ojson a = ojson::array();
        for (std::size_t m = 0; m < counts.size(); ++m) a.push_back(ojson{{"m", m}, {"count", counts[m].get_str()}});
        std::cout << ojson{{"p", p}, {"deg", deg}, {"counts", a}, {"total", total.get_str()}}.dump(2) << "\n";
        return;
    }
    std::cout << "m,count\n";
    for (std::size_t m = 0; m < counts.size(); ++m) std::cout << m << "," << counts[m].get_str() << "\n";
}

ojson cmd_bound(int n, const std::string& f0s, std::uint64_t cutoff) {
    auto b = bound_report(n, parse_int(f0s), cutoff);
    auto both = [](const Rat& r) { return ojson{{"exact", to_string(r)}, {"approx", r.get_d()}}; };
    return ojson{{"n", n},
                 {"f0", b.f0.get_str()},
                 {"nu", b.nu},
                 {"coarse_delta", both(b.coarse_delta)},
                 {"coarse_delta_max", both(b.coarse_delta_max)},
                 {"refined_delta_max", both(b.refined_delta_max)},
                 {"printed_chain_delta_max", both(b.printed_chain_delta_max)},
                 {"volume_product_upper", both(b.volume_product_upper)},
                 {"refined_below_one", b.refined_delta_max < 1}};
}

ojson cmd_grouporder(int n, std::uint64_t p, bool mod8, bool brute) {
    require(n >= 0 && n <= 64, "grouporder: --n out of range");
    ojson j{{"n", n}};
    if (mod8) {
        j["modulus"] = 8;
        j["formula"] = group_order_Ghat_mod8(n).get_str();
        if (brute) j["brute_force"] = brute_orthogonal_count(n, 8, false).get_str();
    } else {
        require(n >= 1, "grouporder: n must be positive over F_p");
        require(p >= 3 && is_prime(p), "grouporder: --p must be an odd prime");
        j["modulus"] = p;
        j["formula"] = group_order_G_mod_p(n, p).get_str();
        if (brute) j["brute_force"] = brute_orthogonal_count(n, p, true).get_str();
    }
    return j;
}

template <class K>
ojson point_json(const P1Point<K>& v) {
    return ojson::array({FieldOps<K>::str(v.first), FieldOps<K>::str(v.second)});
}

template <class K>
ojson covering_common(const SplitCoveringSpec<K>& s, const std::string& action, const std::vector<K>& point) {
    if (action == "ideal") {
        ojson rels = ojson::array();
        for (auto& g : covering_ideal(s)) {
            ojson c = ojson::array();
            for (auto& x : g.coeffs) c.push_back(FieldOps<K>::str(x));
            rels.push_back(ojson{{"quadruple", g.quadruple}, {"coeffs", c}});
        }
        return ojson{{"relations", rels}};
    }
    require(action == "eval", "covering: unknown action " + action);
    require(!point.empty(), "covering eval: give --point");
    return ojson{{"image", point_json(pi_delta_eval(s, point))}};
}

ojson cmd_covering(const std::string& roots, const std::string& delta, std::uint64_t q, const std::string& action,
                   const std::string& point) {
    auto rs = split(roots, ','), ds = split(delta, ','), ps = point.empty() ? std::vector<std::string>{} : split(point, ',');
    if (q == 0) {
        require(action != "fiber", "covering fiber: give --q");
        std::vector<Rat> r, d, z;
        for (auto& t : rs) r.push_back(parse_rat(t));
        for (auto& t : ds) d.push_back(parse_rat(t));
        for (auto& t : ps) z.push_back(parse_rat(t));
        auto s = make_rat_spec(r, d);
        auto j = covering_common(s, action, z);
        j["field"] = "Q";
        return j;
    }
    auto to_long = [](const std::string& t) {
        Int a = parse_int(t);
        require(a.fits_slong_p(), "covering: residue out of range");
        return a.get_si();
    };
    std::vector<long> r, d;
    for (auto& t : rs) r.push_back(to_long(t));
    for (auto& t : ds) d.push_back(to_long(t));
    auto s = make_fp_spec(q, r, d);
    ojson j;
    if (action == "fiber") {
        auto fc = fiber_census(s);
        ojson fibers = ojson::array();
        for (std::uint64_t a = 0; a <= fc.q; ++a)
            fibers.push_back(ojson{{"alpha", a < fc.q ? ojson::array({std::to_string(a), "1"}) : ojson::array({"1", "0"})},
                                   {"size", fc.fibers[a]}});
        j = ojson{{"total", fc.total}, {"max_fiber", fc.max_fiber}, {"max_branch_fiber", fc.max_branch_fiber},
                  {"fiber_bound", 1ULL << (s.dim() - 1)}, {"branch_fiber_bound", 1ULL << (s.dim() - 2)}, {"fibers", fibers}};
    } else {
        std::vector<Fp> z;
        for (auto& t : ps) z.emplace_back(to_long(t), q);
        j = covering_common(s, action, z);
    }
    j["field"] = "F_" + std::to_string(q);
    return j;
}

struct CensusArgs {
    int n = 1;
    std::string f0 = "1", X = "1";
    long bound = 10;
    std::uint64_t prime_budget = 0, shard = 0, shards = 1, seed = 0, max_records = 0;
    unsigned threads = 0;
    std::string out;
    bool resume = false, csv = false;
    std::vector<std::string> merge;
};

int cmd_census(const CensusArgs& a, bool json) {
    CensusOptions o;
    o.n = a.n;
    o.f0 = parse_int(a.f0);
    o.X = parse_big(a.X);
    o.search_bound = a.bound;
    o.prime_budget = a.prime_budget;
    o.shard = a.shard;
    o.shards = a.shards;
    o.threads = a.threads;
    o.seed = a.seed;
    if (a.max_records > 0) o.max_records = a.max_records;
    std::vector<CensusRecord> recs;
    ojson extra;
    if (!a.merge.empty()) {
        std::vector<std::vector<CensusRecord>> parts;
        for (auto& f : a.merge) parts.push_back(load_records(f));
        recs = merge_records(parts);
        if (!a.out.empty()) {
            std::ofstream out(a.out, std::ios::binary | std::ios::trunc);
            for (auto& r : recs) out << record_to_jsonl(r) << '\n';
            if (!out) throw std::runtime_error("census: cannot write " + a.out);
        }
        extra["merged_files"] = a.merge.size();
    } else if (!a.out.empty()) {
        auto res = run_census_to_file(o, a.out, a.resume);
        extra["resumed"] = res.resumed;
        extra["written"] = res.written;
        extra["complete"] = res.complete;
        recs = load_records(a.out);
    } else {
        recs = run_census(o);
    }
    auto s = summarize(o.n, o.f0, o.X, recs);
    if (a.csv) {
        std::cout << summary_csv_header() << "\n" << summary_csv_row(s) << "\n";
        return 0;
    }
    auto j = ojson::parse(summary_json(s));
    j["seed"] = o.seed;
    if (o.shards > 1 && a.merge.empty()) j["shard"] = std::to_string(o.shard) + "/" + std::to_string(o.shards);
    for (auto it = extra.begin(); it != extra.end(); ++it) j[it.key()] = it.value();
    emit(j, json);
    return 0;
}

ojson cmd_vanish(std::uint64_t p, int n) {
    require(p >= 2 && is_prime(p), "vanish-density: --p must be prime");
    require(n >= 1, "vanish-density: --n must be positive");
    Rat d = vanish_density(p, n), c = vanish_density_closed_form(p, n);
    return ojson{{"p", p}, {"n", n}, {"density", to_string(d)}, {"closed_form", to_string(c)}, {"agree", d == c}};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"superell: superelliptic equations y^2 = F(x,z), exact arithmetic toolkit"};
    app.require_subcommand(1);

    std::string form, solution, pstr, f0 = "1", X;
    std::string roots, delta, action, point;
    int n = 1, deg = 1;
    long K = 0;
    bool json = false, all = false, mod8 = false, brute = false;
    std::uint64_t budget = 0, p = 0, q = 0, cutoff = 10000, mc = 0, seed = 0;
    CensusArgs ca;

    auto* s_mon = app.add_subcommand("monicize", "F_mon(x,z) = F(x, f0 z)/f0");
    s_mon->add_option("--form", form, "n;f0,f1,...,f_{2n+1}")->required();
    auto* s_h = app.add_subcommand("height", "height terms of a form, optionally compared with X");
    s_h->add_option("--form", form)->required();
    s_h->add_option("--X", X, "bound, decimal or b^e");
    auto* s_orb = app.add_subcommand("orbit", "orbit certificate of a primitive solution");
    s_orb->add_option("--form", form)->required();
    s_orb->add_option("--solution", solution, "x0,c,z0")->required();
    s_orb->add_option("--K", K, "force this K");
    auto* s_loc = app.add_subcommand("local", "Z_p solubility");
    s_loc->add_option("--form", form)->required();
    s_loc->add_option("--p", pstr);
    s_loc->add_flag("--all", all, "every place (reals and all relevant primes)");
    s_loc->add_option("--budget", budget, "also check all p up to this bound");
    auto* s_den = app.add_subcommand("density", "mu and mu' for f0");
    s_den->add_option("--f0", f0)->required();
    s_den->add_option("--n", n)->required()->check(CLI::Range(1, 1000));
    s_den->add_option("--mc-samples", mc, "Monte Carlo samples for the real-root distribution");
    s_den->add_option("--seed", seed);
    auto* s_t1 = app.add_subcommand("table1", "the limiting densities table");
    auto* s_fs = app.add_subcommand("factorstats", "monic polynomials over F_p by number of distinct factors");
    s_fs->add_option("--p", p)->required();
    s_fs->add_option("--deg", deg)->required();
    auto* s_b = app.add_subcommand("bound", "upper-bound assembly for the insoluble density");
    s_b->add_option("--n", n)->required()->check(CLI::Range(1, 1000));
    s_b->add_option("--f0", f0)->required();
    s_b->add_option("--cutoff", cutoff, "exact Euler factors up to this prime");
    auto* s_g = app.add_subcommand("grouporder", "orthogonal group orders");
    s_g->add_option("--n", n)->required();
    s_g->add_option("--p", p);
    s_g->add_flag("--mod8", mod8, "the group over Z/8 instead of F_p");
    s_g->add_flag("--brute", brute, "also count by brute force (tiny n only)");
    auto* s_cov = app.add_subcommand("covering", "2-covering equations of a split form");
    s_cov->add_option("--roots", roots)->required();
    s_cov->add_option("--delta", delta)->required();
    s_cov->add_option("--q", q, "work over F_q instead of Q");
    s_cov->add_option("--point", point, "coordinates for eval");
    s_cov->add_option("action", action)->required()->check(CLI::IsMember({"ideal", "fiber", "eval"}));
    auto* s_cen = app.add_subcommand("census", "enumerate the family up to height X");
    s_cen->add_option("--n", ca.n)->required()->check(CLI::Range(1, 64));
    s_cen->add_option("--f0", ca.f0)->required();
    s_cen->add_option("--X", ca.X)->required();
    s_cen->add_option("--bound", ca.bound, "solution search bound");
    s_cen->add_option("--prime-budget", ca.prime_budget);
    s_cen->add_option("--shard", ca.shard);
    s_cen->add_option("--shards", ca.shards);
    s_cen->add_option("--threads", ca.threads, "overrides SUPERELL_THREADS");
    s_cen->add_option("--seed", ca.seed);
    s_cen->add_option("--max-records", ca.max_records, "stop after this many new records");
    s_cen->add_option("--out", ca.out, "JSONL record file");
    s_cen->add_flag("--resume", ca.resume, "continue an interrupted --out file");
    s_cen->add_flag("--csv", ca.csv, "print the summary as CSV");
    s_cen->add_option("--merge", ca.merge, "merge record files instead of enumerating");
    auto* s_v = app.add_subcommand("vanish-density", "density of forms vanishing on P^1(F_p)");
    s_v->add_option("--p", p)->required();
    s_v->add_option("--n", n)->required();

    for (auto* sc : app.get_subcommands({})) sc->add_flag("--json", json, "machine-readable output");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        std::cerr << "error: " << e.what() << "\n\n" << app.help();
        return 2;
    }

    try {
        if (s_mon->parsed()) emit(cmd_monicize(form), json);
        else if (s_h->parsed()) emit(cmd_height(form, X), json);
        else if (s_orb->parsed()) emit(cmd_orbit(form, solution, K), true);
        else if (s_loc->parsed()) emit(cmd_local(form, pstr, all, budget), true);
        else if (s_den->parsed()) emit(cmd_density(f0, n, mc, seed), json);
        else if (s_t1->parsed()) cmd_table1(json);
        else if (s_fs->parsed()) cmd_factorstats(p, deg, json);
        else if (s_b->parsed()) emit(cmd_bound(n, f0, cutoff), json);
        else if (s_g->parsed()) emit(cmd_grouporder(n, p, mod8, brute), json);
        else if (s_cov->parsed()) emit(cmd_covering(roots, delta, q, action, point), true);
        else if (s_cen->parsed()) return cmd_census(ca, json);
        else if (s_v->parsed()) emit(cmd_vanish(p, n), json);
    } catch (const PreconditionError& e) {
        std::cerr << "precondition: " << e.what() << "\n";
        return 2;
    } catch (const InternalError& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
