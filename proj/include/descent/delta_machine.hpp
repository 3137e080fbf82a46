#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "descent/arith.hpp"

namespace descent {

// element of {+,-}^(i+1); bit q of mask set means s_q = +
struct ISequence {
    int length = 0;
    std::uint32_t mask = 0;

    static ISequence parse(const std::string& s);
    static ISequence all_plus(int i);
    static ISequence all_minus(int i);

    int i() const { return length - 1; }
    bool plus(int q) const;  // cyclic index
    int plus_count() const;
    bool is_all_plus() const { return mask == (std::uint32_t{1} << length) - 1; }
    bool is_all_minus() const { return mask == 0; }
    std::string to_string() const;

    auto operator<=>(const ISequence&) const = default;
};

// run of plusses s_start, ..., s_end in cyclic enumeration; end may exceed i
struct Cluster {
    int start = 0;
    int end = 0;
    int size() const { return end - start + 1; }
    bool operator==(const Cluster&) const = default;
};

struct SequenceAnalysis {
    std::vector<Cluster> clusters;
    int l = -1;
    int r = -1;
    int delta = -1;
    std::optional<Cluster> initial;
};

SequenceAnalysis analyze(const ISequence& s);

struct Contraction {
    ISequence result;          // length i
    int deleted = 0;           // physical position removed
    std::vector<int> index_map;  // old position -> new position, -1 for the deleted one
};

std::vector<Contraction> contractions(const ISequence& s);

struct Transformation {
    ISequence result;
    Contraction contraction;
    int inserted_at = 0;
};

std::vector<Transformation> transformations(const ISequence& s);
std::set<ISequence> trf(const ISequence& s);

bool is_improvement(const ISequence& improved, const ISequence& s);
std::vector<ISequence> improvements(const ISequence& s);

bool precedes(const ISequence& a, const ISequence& b);

struct OrderCheck {
    bool ok = true;
    std::vector<ISequence> cycle;
};

OrderCheck order_check(int i);

using MachineState = std::set<ISequence>;

// union of Trf over T with S \ T
MachineState machine_union(const MachineState& s, const MachineState& t);
MachineState machine_step(const MachineState& s, const MachineState& t,
                          const std::function<ISequence(const ISequence&)>& improve);

struct StepValidation {
    bool ok = false;
    MachineState t;  // a subset T realising the step
};

StepValidation validate_step(const MachineState& s, const MachineState& next);

struct MachineTrace {
    std::vector<MachineState> states;
    std::vector<MachineState> chosen;  // T_j
};

struct WorstCase {
    int i = 0;
    std::uint64_t bound = 0;  // 2^(2^(i+1)-1) - 1
    int exhaustive_max = 0;
    std::string exhaustive_mode;
    MachineTrace exhaustive_witness;
    bool exhaustive_cycle = false;
    std::uint64_t episodes = 0;
    int random_max = -1;
    bool random_hit_cap = false;
    // literal relational search (improvements of arbitrary elements)
    bool literal_searched = false;
    int literal_max = -1;
    std::optional<MachineTrace> literal_cycle;
    bool within_bound() const;
};

WorstCase worst_case(int i, std::uint64_t episodes, std::uint64_t seed);

struct SublemmaResult {
    int n = 0;
    int max_steps = 0;
    std::uint64_t bound = 0;  // 2^(n-1) - 1
    std::vector<std::vector<int>> witness;
    bool cycle = false;
    // longest play when an element may also be replaced by the empty set
    int empty_replacement_max = 0;
};

// every changed element is replaced by a nonempty set of larger elements
SublemmaResult sublemma_solve(int n);

struct JumpReport {
    ISequence before;
    ISequence after;
    int deleted = 0;
    bool from_initial = false;
    bool initial_is_image = false;
    bool clause_a_condition = false;
    bool clause_a_holds = false;
    bool clause_b_holds = false;
    bool clause_c_holds = false;
    bool ok() const { return clause_a_holds && clause_b_holds && clause_c_holds; }
};

// delete the plus at physical position p
JumpReport jumpdelta_check(const ISequence& s, int p);

}  // namespace descent
