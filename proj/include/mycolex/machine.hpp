#ifndef MYCOLEX_MACHINE_HPP
#define MYCOLEX_MACHINE_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "mycolex/lexicon.hpp"

namespace mycolex {

// Probabilistic spiking machine over word-length states. probabilities are
// row-normalized counts: p(i,j) = count(i,j) / sum_z count(i,z).
struct TransitionGraph {
    std::set<int> states;
    std::map<std::pair<int, int>, std::int64_t> counts;
    std::map<std::pair<int, int>, double> probabilities;
};

// Deterministic skeleton: each state keeps only its maximum-count outgoing
// transition. successor is partial; states without outgoing counts are absent.
struct FunctionalGraph {
    std::set<int> states;
    std::map<int, int> successor;
};

// Counts consecutive word-length pairs within each sentence; pairs never
// cross sentence boundaries. If max_state is given, words above it are
// dropped from each sentence before pairing. Throws when no transitions
// remain.
TransitionGraph build_machine(const std::vector<Sentence>& sentences,
                              std::optional<int> max_state = std::nullopt);

// successor(i) = argmax_j count(i,j), ties to the smallest j.
FunctionalGraph filter_graph(const TransitionGraph& g);

// States with no predecessors (Garden-of-Eden states). Self-loops count as
// predecessors.
std::set<int> leaves(const TransitionGraph& g);
std::set<int> leaves(const FunctionalGraph& f);

// States with successor(i) == i.
std::set<int> absorbing_states(const FunctionalGraph& f);

// All cycles of the functional graph (disjoint since out-degree <= 1).
// Self-loops are length-1 cycles. Each cycle is rotated to start from its
// smallest state; cycles are listed in order of that smallest state.
std::vector<std::vector<int>> cycles(const FunctionalGraph& f);

// Maximum over leaf states of the number of transitions taken until the walk
// first stands on a cycle state (an absorbing state is a length-1 cycle) or
// dead-ends on a state without a successor. Throws when the graph has no
// leaves.
int max_transient(const FunctionalGraph& f);

// Fixed point of the restart-smoothed transition operator: with probability
// 1-restart the chain follows p(i,j), with probability restart it jumps to a
// uniformly random state; states without outgoing transitions redistribute
// uniformly. Power iteration to L1 tolerance tol; throws after 1e5
// iterations without convergence.
std::map<int, double> stationary_distribution(const TransitionGraph& g,
                                              double restart = 0.01, double tol = 1e-10);

// Minimal prefix of states sorted by descending stationary probability (ties
// to the smaller state) whose cumulative mass reaches `mass`.
std::vector<int> attractive_core(const TransitionGraph& g, double mass = 0.8);

// Aggregate analysis of one machine. `leaves` refers to the probabilistic
// graph; absorbing, cycles and max_transient describe the filtered graph;
// core comes from the stationary distribution of the probabilistic graph.
struct MachineReport {
    std::set<int> leaves;
    std::set<int> absorbing;
    std::vector<std::vector<int>> cycles;
    std::optional<int> max_transient;  // absent when the filtered graph has no leaves
    std::vector<int> core;
};

MachineReport analyze_machine(const TransitionGraph& g, double restart = 0.01,
                              double core_mass = 0.8);

// DOT export for external layout tools.
std::string to_dot(const TransitionGraph& g, const std::string& name = "machine");
std::string to_dot(const FunctionalGraph& f, const std::string& name = "filtered");

}  // namespace mycolex

#endif
