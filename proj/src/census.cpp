#include "superell/census.hpp"

#include "superell/densities.hpp"
#include "superell/localsolve.hpp"

#include <json.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <numeric>
#include <sstream>
#include <thread>

namespace superell {

using ojson = nlohmann::ordered_json;

std::string to_string(CensusClass c) {
    switch (c) {
        case CensusClass::insoluble_local: return "insoluble_local";
        case CensusClass::soluble_witnessed: return "soluble_witnessed";
        case CensusClass::locally_soluble_unknown: return "locally_soluble_unknown";
    }
    return "?";
}

CensusClass census_class_from_string(const std::string& s) {
    if (s == "insoluble_local") return CensusClass::insoluble_local;
    if (s == "soluble_witnessed") return CensusClass::soluble_witnessed;
    if (s == "locally_soluble_unknown") return CensusClass::locally_soluble_unknown;
    throw PreconditionError("unknown census class: " + s);
}

bool operator==(const CensusRecord& x, const CensusRecord& y) {
    auto sol = [](const std::optional<PrimitiveSolution>& s) {
        return s ? std::optional<std::string>(s->str()) : std::nullopt;
    };
    return x.form == y.form && x.disc == y.disc && x.separable == y.separable && x.local == y.local &&
           x.cond == y.cond && sol(x.solution) == sol(y.solution) && x.cls == y.cls;
}

void check_record(const CensusRecord& r) {
    bool refuted = std::any_of(r.local.begin(), r.local.end(), [](const CensusLocal& l) { return !l.soluble; });
    switch (r.cls) {
        case CensusClass::soluble_witnessed:
            ensure(r.solution.has_value(), "census: witnessed record without a solution");
            try {
                check_solution(r.form, *r.solution);
            } catch (const PreconditionError& e) {
                throw InternalError(std::string("census: witness does not verify: ") + e.what());
            }
            ensure(!refuted, "census: witnessed record with a local obstruction");
            break;
        case CensusClass::insoluble_local:
            ensure(refuted, "census: insoluble_local without a failing prime");
            ensure(!r.solution, "census: insoluble_local with a solution");
            break;
        case CensusClass::locally_soluble_unknown:
            ensure(!refuted && !r.solution, "census: unknown record contradicts its data");
            break;
    }
}

namespace {

ojson int_json(const Int& a) {
    if (a.fits_slong_p()) return a.get_si();
    return a.get_str();
}

Int json_int(const ojson& j) {
    if (j.is_number_integer()) return Int(j.get<long>());
    if (j.is_string()) return Int(j.get<std::string>());
    throw PreconditionError("census: expected an integer");
}

}  // namespace

std::string record_to_jsonl(const CensusRecord& r) {
    ojson j;
    j["form"] = r.form.encode();
    j["disc"] = r.disc.get_str();
    j["separable"] = r.separable;
    j["local"] = ojson::array();
    for (auto& l : r.local) j["local"].push_back(ojson{{"p", l.p}, {"soluble", l.soluble}, {"depth", l.depth}});
    j["cond"] = ojson::array();
    for (auto& c : r.cond) j["cond"].push_back(ojson{{"p", c.p}, {"a", c.a}, {"b", c.b}});
    if (r.solution)
        j["solution"] = ojson::array({int_json(r.solution->x0), int_json(r.solution->c), int_json(r.solution->z0)});
    else
        j["solution"] = nullptr;
    j["class"] = to_string(r.cls);
    return j.dump();
}

CensusRecord record_from_jsonl(const std::string& line) {
    ojson j;
    try {
        j = ojson::parse(line);
    } catch (const nlohmann::json::exception& e) {
        throw PreconditionError(std::string("census: malformed record: ") + e.what());
    }
    CensusRecord r;
    try {
        r.form = BinaryForm::decode(j.at("form").get<std::string>());
        r.disc = Int(j.at("disc").get<std::string>());
        r.separable = j.at("separable").get<bool>();
        for (auto& l : j.at("local")) r.local.push_back({l.at("p").get<std::uint64_t>(), l.at("soluble").get<bool>(), l.at("depth").get<int>()});
        for (auto& c : j.at("cond")) r.cond.push_back({c.at("p").get<std::uint64_t>(), c.at("a").get<bool>(), c.at("b").get<bool>()});
        auto& s = j.at("solution");
        if (!s.is_null()) {
            require(s.is_array() && s.size() == 3, "census: solution must be [x0,c,z0]");
            r.solution = PrimitiveSolution{json_int(s[0]), json_int(s[1]), json_int(s[2])};
        }
        r.cls = census_class_from_string(j.at("class").get<std::string>());
    } catch (const nlohmann::json::exception& e) {
        throw PreconditionError(std::string("census: malformed record: ") + e.what());
    }
    require(r.disc == disc(r.form), "census: stored discriminant is wrong");
    require(r.separable == (r.disc != 0), "census: separable flag is wrong");
    try {
        check_record(r);
    } catch (const InternalError& e) {
        throw PreconditionError(e.what());
    }
    return r;
}

std::optional<PrimitiveSolution> search_solution(const BinaryForm& F, long B) {
    require(B >= 0, "search bound must be nonnegative");
    for (long h = 1; h <= B; ++h) {
        for (long x = -h; x <= h; ++x)
            for (long z = -h; z <= h; ++z) {
                if (std::max(std::labs(x), std::labs(z)) != h || std::gcd(x, z) != 1) continue;
                Int v = F.eval(Int(x), Int(z));
                if (v < 0 || !mpz_perfect_square_p(v.get_mpz_t())) continue;
                Int c;
                mpz_sqrt(c.get_mpz_t(), v.get_mpz_t());
                return PrimitiveSolution{Int(x), c, Int(z)};
            }
    }
    return std::nullopt;
}

unsigned census_threads(unsigned requested) {
    if (requested > 0) return requested;
    if (const char* e = std::getenv("SUPERELL_THREADS")) {
        char* end = nullptr;
        long v = std::strtol(e, &end, 10);
        require(end != e && *end == '\0' && v >= 1 && v <= 1024, "SUPERELL_THREADS must be an integer in [1, 1024]");
        return static_cast<unsigned>(v);
    }
    return 1;
}

std::vector<std::uint64_t> census_primes(int n, const Int& f0, std::uint64_t prime_budget) {
    require(f0 != 0, "census: f0 must be nonzero");
    std::vector<std::uint64_t> ps;
    std::uint64_t lim = std::max<std::uint64_t>(prime_budget, 2 * n + 1);
    for (std::uint64_t p = 2; p <= lim; ++p)
        if (is_prime(p)) ps.push_back(p);
    Int m = abs(f0);
    for (std::uint64_t p = 2; Int(p) * p <= m; ++p) {
        if (!mpz_divisible_ui_p(m.get_mpz_t(), p)) continue;
        ps.push_back(p);
        while (mpz_divisible_ui_p(m.get_mpz_t(), p)) m /= p;
    }
    if (m > 1) {
        require(m.fits_ulong_p(), "census: f0 has a prime factor above 2^64");
        ps.push_back(m.get_ui());
    }
    std::sort(ps.begin(), ps.end());
    ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
    return ps;
}

CensusRecord classify_form(const BinaryForm& F, const CensusOptions& opt) {
    CensusRecord r;
    r.form = F;
    r.disc = disc(F);
    r.separable = r.disc != 0;
    bool refuted = false;
    if (r.separable) {
        for (auto p : census_primes(F.n, F.lead(), opt.prime_budget)) {
            auto rep = zp_soluble(F, Int(p));
            r.local.push_back({p, rep.soluble, rep.depth_used});
            refuted = refuted || !rep.soluble;
        }
        for (auto& q : squarefree_divisors(F.lead())) {
            auto c = condition_report(F, q);
            r.cond.push_back({q.get_ui(), c.cond_a, c.cond_b});
        }
    }
    if (!refuted) r.solution = search_solution(F, opt.search_bound);
    r.cls = refuted ? CensusClass::insoluble_local
                    : r.solution ? CensusClass::soluble_witnessed : CensusClass::locally_soluble_unknown;
    check_record(r);
    return r;
}

namespace {

void validate(const CensusOptions& opt) {
    require(opt.n >= 1, "census: n must be positive");
    require(opt.f0 != 0, "census: f0 must be nonzero");
    require(opt.X >= 1, "census: X must be positive");
    require(opt.shards >= 1 && opt.shard < opt.shards, "census: need 0 <= shard < shards");
}

std::uint64_t shard_size(const FormBox& box, const CensusOptions& opt) {
    Int size = box.size(), cnt = 0;
    if (size > opt.shard) cnt = (size - opt.shard + opt.shards - 1) / opt.shards;
    require(cnt.fits_ulong_p(), "census: box too large");
    return cnt.get_ui();
}

// Records j in [from, to) of the shard, computed by the worker pool and
// returned in order.
std::vector<CensusRecord> compute_block(const FormBox& box, const CensusOptions& opt, std::uint64_t from, std::uint64_t to,
                                        unsigned threads) {
    std::vector<CensusRecord> out(to - from);
    auto work = [&](unsigned t, std::exception_ptr& err) {
        try {
            for (std::uint64_t j = from + t; j < to; j += threads)
                out[j - from] = classify_form(box.at(Int(opt.shard) + Int(j) * opt.shards), opt);
        } catch (...) {
            err = std::current_exception();
        }
    };
    std::vector<std::exception_ptr> errs(threads);
    if (threads == 1) {
        work(0, errs[0]);
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t, std::ref(errs[t]));
        for (auto& th : pool) th.join();
    }
    for (auto& e : errs)
        if (e) std::rethrow_exception(e);
    return out;
}

const std::uint64_t kBlock = 256;

}  // namespace

std::vector<CensusRecord> run_census(const CensusOptions& opt) {
    validate(opt);
    FormBox box(opt.n, opt.f0, opt.X);
    unsigned threads = census_threads(opt.threads);
    std::uint64_t total = std::min(shard_size(box, opt), opt.max_records);
    std::vector<CensusRecord> recs;
    for (std::uint64_t j = 0; j < total; j += kBlock) {
        auto blk = compute_block(box, opt, j, std::min(total, j + kBlock), threads);
        for (auto& r : blk) recs.push_back(std::move(r));
    }
    return recs;
}

CensusFileResult run_census_to_file(const CensusOptions& opt, const std::string& path, bool resume) {
    validate(opt);
    FormBox box(opt.n, opt.f0, opt.X);
    std::uint64_t size = shard_size(box, opt);
    CensusFileResult res;
    std::string kept;
    if (resume) {
        std::ifstream in(path, std::ios::binary);
        if (in) {
            std::stringstream ss;
            ss << in.rdbuf();
            std::string data = ss.str();
            std::size_t pos = 0;
            while (true) {
                auto nl = data.find('\n', pos);
                if (nl == std::string::npos) break;  // torn or empty tail
                std::string line = data.substr(pos, nl - pos);
                CensusRecord r;
                try {
                    r = record_from_jsonl(line);
                } catch (const PreconditionError&) {
                    break;
                }
                if (res.resumed >= size || r.form != box.at(Int(opt.shard) + Int(res.resumed) * opt.shards)) break;
                kept += line + "\n";
                ++res.resumed;
                pos = nl + 1;
            }
        }
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("census: cannot open " + path);
    out << kept;
    unsigned threads = census_threads(opt.threads);
    std::uint64_t j = res.resumed;
    while (j < size && res.written < opt.max_records) {
        std::uint64_t to = j + std::min({size - j, kBlock, opt.max_records - res.written});
        for (auto& r : compute_block(box, opt, j, to, threads)) out << record_to_jsonl(r) << '\n';
        out.flush();
        if (!out) throw std::runtime_error("census: write failed on " + path);
        res.written += to - j;
        j = to;
    }
    res.complete = j == size;
    return res;
}

std::vector<CensusRecord> load_records(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("census: cannot open " + path);
    std::vector<CensusRecord> recs;
    std::string line;
    while (std::getline(in, line))
        if (!line.empty()) recs.push_back(record_from_jsonl(line));
    return recs;
}

bool canonical_less(const CensusRecord& a, const CensusRecord& b) {
    if (a.form.n != b.form.n) return a.form.n < b.form.n;
    return std::lexicographical_compare(a.form.f.begin(), a.form.f.end(), b.form.f.begin(), b.form.f.end());
}

std::vector<CensusRecord> merge_records(const std::vector<std::vector<CensusRecord>>& parts) {
    std::vector<CensusRecord> all;
    for (auto& p : parts) all.insert(all.end(), p.begin(), p.end());
    std::sort(all.begin(), all.end(), canonical_less);
    for (std::size_t i = 1; i < all.size(); ++i)
        require(all[i - 1].form != all[i].form, "census merge: duplicate form " + all[i].form.encode());
    return all;
}

CensusSummary summarize(int n, const Int& f0, const Int& X, const std::vector<CensusRecord>& records) {
    CensusSummary s;
    s.n = n;
    s.f0 = f0;
    s.X = X;
    for (auto& r : records) {
        require(r.form.n == n && r.form.lead() == f0, "census summary: record from another family");
        check_record(r);
        ++s.total;
        s.separable += r.separable;
        switch (r.cls) {
            case CensusClass::insoluble_local: ++s.insoluble_local; break;
            case CensusClass::soluble_witnessed: ++s.soluble_witnessed; break;
            case CensusClass::locally_soluble_unknown: ++s.unknown; break;
        }
    }
    ensure(s.insoluble_local + s.soluble_witnessed + s.unknown == s.total, "census summary: totals do not add up");
    s.mu = mu(f0, n);
    s.mu_prime = mu_prime(f0);
    Int a = abs(f0);
    s.f0_abs_square = mpz_perfect_square_p(a.get_mpz_t()) != 0;
    return s;
}

std::string summary_csv_header() { return "n,f0,X,total,insoluble_local,soluble_witnessed,unknown,mu,mu_prime"; }

std::string summary_csv_row(const CensusSummary& s) {
    std::ostringstream o;
    o << s.n << ',' << s.f0.get_str() << ',' << s.X.get_str() << ',' << s.total << ',' << s.insoluble_local << ','
      << s.soluble_witnessed << ',' << s.unknown << ',' << to_string(s.mu) << ',' << to_string(s.mu_prime);
    return o.str();
}

std::string summary_json(const CensusSummary& s) {
    auto frac = [&](std::uint64_t k) { return s.total ? to_string(Rat(Int(k), Int(s.total))) : std::string("0"); };
    ojson j;
    j["n"] = s.n;
    j["f0"] = s.f0.get_str();
    j["X"] = s.X.get_str();
    j["total"] = s.total;
    j["separable"] = s.separable;
    j["insoluble_local"] = s.insoluble_local;
    j["soluble_witnessed"] = s.soluble_witnessed;
    j["unknown"] = s.unknown;
    j["fraction_insoluble_local"] = frac(s.insoluble_local);
    j["fraction_soluble_witnessed"] = frac(s.soluble_witnessed);
    j["fraction_unknown"] = frac(s.unknown);
    j["mu"] = to_string(s.mu);
    j["mu_prime"] = to_string(s.mu_prime);
    j["one_minus_mu"] = to_string(Rat(1) - s.mu);
    j["mu_prime_minus_mu"] = to_string(s.mu_prime - s.mu);
    j["f0_abs_square"] = s.f0_abs_square;
    j["note"] = "insoluble_local is certified by a local obstruction; unknown records are not claimed insoluble";
    return j.dump(2);
}

}  // namespace superell
