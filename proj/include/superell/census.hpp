#pragma once

#include "superell/forms.hpp"
#include "superell/orbits.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace superell {

enum class CensusClass { insoluble_local, soluble_witnessed, locally_soluble_unknown };
std::string to_string(CensusClass c);
CensusClass census_class_from_string(const std::string& s);

struct CensusLocal {
    std::uint64_t p = 2;
    bool soluble = true;
    int depth = 0;
    friend bool operator==(const CensusLocal&, const CensusLocal&) = default;
};

struct CensusCond {
    std::uint64_t p = 2;
    bool a = false, b = false;
    friend bool operator==(const CensusCond&, const CensusCond&) = default;
};

struct CensusRecord {
    BinaryForm form;
    Int disc;
    bool separable = true;
    std::vector<CensusLocal> local;  // primes <= 2n+1, primes dividing 2 f0, and any below the prime budget
    std::vector<CensusCond> cond;    // primes dividing the squarefree part of f0
    std::optional<PrimitiveSolution> solution;
    CensusClass cls = CensusClass::locally_soluble_unknown;

    friend bool operator==(const CensusRecord& x, const CensusRecord& y);
};

// Throws InternalError if the classification contradicts the data:
// a witness must re-verify, insoluble_local needs a failing prime, and the
// two are exclusive.
void check_record(const CensusRecord& r);

// One JSON object, no trailing newline, fixed field order.
std::string record_to_jsonl(const CensusRecord& r);
// Parses and re-verifies; PreconditionError on malformed input.
CensusRecord record_from_jsonl(const std::string& line);

// Coprime (x0, z0) with max(|x0|,|z0|) <= B, in increasing max(|x0|,|z0|)
// and then lexicographic order; first one with F(x0,z0) a square wins.
std::optional<PrimitiveSolution> search_solution(const BinaryForm& F, long B);

struct CensusOptions {
    int n = 1;
    Int f0 = 1;
    Int X = 1;
    long search_bound = 10;
    std::uint64_t prime_budget = 0;  // also certify every prime up to this bound
    std::uint64_t shard = 0, shards = 1;
    unsigned threads = 0;            // 0: SUPERELL_THREADS, else 1
    std::uint64_t seed = 0;
    std::uint64_t max_records = UINT64_MAX;  // stop early (simulated interruption)
};

// Worker count: explicit request, else SUPERELL_THREADS, else 1.
unsigned census_threads(unsigned requested);

// Primes at which local solubility is decided for a record. Any other prime
// p > 2n+1 with p not dividing f0 admits a point of unit value, hence a
// Z_p-point.
std::vector<std::uint64_t> census_primes(int n, const Int& f0, std::uint64_t prime_budget);

CensusRecord classify_form(const BinaryForm& F, const CensusOptions& opt);

// All records of the requested shard, in box order.
std::vector<CensusRecord> run_census(const CensusOptions& opt);

struct CensusFileResult {
    std::uint64_t resumed = 0;   // valid records found in the checkpoint
    std::uint64_t written = 0;   // records appended by this call
    bool complete = false;       // the shard is exhausted
};

// Streams the shard to a JSONL file. With resume, valid records already in
// the file are kept (a torn final line is dropped) and enumeration continues
// after them.
CensusFileResult run_census_to_file(const CensusOptions& opt, const std::string& path, bool resume);

std::vector<CensusRecord> load_records(const std::string& path);

// Canonical order: coefficient vectors, lexicographic (the box order).
bool canonical_less(const CensusRecord& a, const CensusRecord& b);
std::vector<CensusRecord> merge_records(const std::vector<std::vector<CensusRecord>>& parts);

struct CensusSummary {
    int n = 1;
    Int f0, X;
    std::uint64_t total = 0, insoluble_local = 0, soluble_witnessed = 0, unknown = 0;
    std::uint64_t separable = 0;
    Rat mu, mu_prime;
    bool f0_abs_square = false;  // flagged: the density statements assume |f0| is not a square
};

// Recomputed from the records alone.
CensusSummary summarize(int n, const Int& f0, const Int& X, const std::vector<CensusRecord>& records);
std::string summary_csv_header();
std::string summary_csv_row(const CensusSummary& s);
std::string summary_json(const CensusSummary& s);

}  // namespace superell
