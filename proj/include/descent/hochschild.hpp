#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "descent/delta_machine.hpp"
#include "descent/lambda_ring.hpp"

namespace descent {

using Tensor = std::vector<BasisMonomial>;
using Chain = std::map<Tensor, Rational>;

std::int64_t total_degree(const Tensor& t);
std::string tensor_string(const Tensor& t);

// some factor has degree in 1..s-1
bool quotient_ok(const Tensor& t, int s);

void add_term(Chain& c, const Tensor& t, const Rational& coeff);
void add_chain(Chain& c, const Chain& other, const Rational& factor = Rational(1));

// memoized lambda_basis_slice
class SliceCache {
public:
    explicit SliceCache(const DescentInstance& inst) : inst_(inst) {}
    const DescentInstance& instance() const { return inst_; }
    const std::vector<BasisMonomial>& monomials(int j, std::int64_t d);

private:
    const DescentInstance& inst_;
    std::map<std::pair<int, std::int64_t>, std::vector<BasisMonomial>> cache_;
};

// sorted basis of C_i(Lambda_j, s) in total degree d
std::vector<Tensor> slice_basis(SliceCache& cache, int j, int i, int s, std::int64_t d,
                                std::size_t budget = 5000000);

// d_r with r read modulo the tensor length, projected to the quotient
Chain face(const DescentInstance& inst, int j, int s, const Tensor& t, int r);
Chain face(const DescentInstance& inst, int j, int s, const Chain& c, int r);
Chain boundary(const DescentInstance& inst, int j, int s, const Tensor& t);
Chain boundary(const DescentInstance& inst, int j, int s, const Chain& c);

struct HomologyRank {
    std::size_t slice = 0;
    std::size_t cycles = 0;
    std::size_t boundaries = 0;
    std::size_t homology = 0;
};

HomologyRank homology_rank(SliceCache& cache, int j, int i, int s, std::int64_t d);

struct ImageRank {
    std::size_t source_cycles = 0;
    std::size_t target_boundaries = 0;
    std::size_t projected_boundaries = 0;  // rank of target boundaries off the source slice
    std::size_t image = 0;
};

ImageRank induced_image_rank(SliceCache& cache, int j, int jp, int i, int s, std::int64_t d);

// random cycles of Z_i(Lambda_j, s)_d all of whose terms carry a factor of degree > gamma_j;
// kernel of the differential on the span of tensors built from a small random monomial pool;
// min_high = 2 keeps only tensors with two high factors
std::vector<Chain> sample_cycles(SliceCache& cache, int j, int i, std::int64_t d, std::size_t count,
                                 std::mt19937_64& rng, std::size_t pool = 3, int min_high = 1);

ISequence to_isequence(const Tensor& t, std::int64_t gamma);
// sequences of all terms together with the all-plus sequence of the given length
MachineState to_isequences(const Chain& c, std::int64_t gamma, int length);

struct DeltaData {
    int l = -1;
    int r = -1;
    int delta = -1;
    bool defined() const { return delta >= 0; }
};

DeltaData delta_data(const Tensor& t, std::int64_t gamma);
int chain_delta(const Chain& c, std::int64_t gamma);  // -1 for the zero chain

struct Format {
    int l = -1;
    int r = -1;
    std::vector<std::optional<BasisMonomial>> fixed;  // factors off the cluster window
    auto operator<=>(const Format&) const = default;
};

std::optional<Format> format_of(const Tensor& t, std::int64_t gamma);
bool same_format(const Tensor& a, const Tensor& b, std::int64_t gamma);
// common format of all terms, if any
std::optional<Format> chain_format(const Chain& c, std::int64_t gamma);

Tensor cyclic_shift(const Tensor& t);  // lambda_i (x) lambda_0 (x) ... (x) lambda_{i-1}
Tensor restrict_tensor(const Tensor& t, const std::vector<int>& indices);
Chain restrict(const Chain& c, const std::vector<int>& indices);
Chain restrict_delta(const Chain& c, std::int64_t gamma);

// letters among a..g whose conditions hold for the pair (lambda, u), (mu, v)
std::string bigstar_cases(const Tensor& lambda, const Tensor& mu, int u, int v, std::int64_t gamma);

struct DescentLift {
    Tensor original;
    Rational coeff;
    DeltaData delta;
    DivisFactor factor;
    Tensor lifted;  // lambda-hat in C_{i+1}(Lambda_{j+1}, s)
    int epsilon = 1;
};

struct DescentStepRecord {
    int j = 0;
    int i = 0;
    Chain z;
    Chain z_min;
    Chain z_prime;
    Chain z_second;
    std::vector<DescentLift> lifts;  // one per index of the selected set
    Chain z_hat;
    Chain z1;
    int delta_before = -1;
    int delta_after = -1;
    MachineState sequences_before;
    MachineState sequences_after;
    StepValidation machine;
    std::size_t window_pairs = 0;    // pairs (k, r) with nonzero d'_r
    std::size_t format_classes = 0;

    bool lifted_in_complex = false;  // z-hat lies in C_{i+1}(Lambda_{j+1}, s)
    bool z1_cycle = false;
    bool kth_summand = false;
    bool cycle0sum = false;
    bool class_sums = false;
    bool zero_sum = false;
    bool implication0 = false;
    bool delta_constant = false;
    bool claim_b = false;
    std::vector<std::string> failures;

    bool ok() const { return failures.empty(); }
};

DescentStepRecord descent_step(const DescentInstance& inst, const Chain& z, int j);

struct DescentRun {
    std::vector<DescentStepRecord> steps;
    Chain final_chain;
    int final_ring = 0;
    bool reached_zero = false;
    bool ok() const;
};

// repeated descent steps from ring j0 until the chain vanishes or the chain of rings ends
DescentRun descend(const DescentInstance& inst, const Chain& z, int j0 = 0);

}  // namespace descent
