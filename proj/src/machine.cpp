#include "mycolex/machine.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "mycolex/errors.hpp"

namespace mycolex {

TransitionGraph build_machine(const std::vector<Sentence>& sentences,
                              std::optional<int> max_state) {
    TransitionGraph g;
    for (const auto& sentence : sentences) {
        std::vector<int> words;
        words.reserve(sentence.word_lengths.size());
        for (int l : sentence.word_lengths) {
            if (l < 1) throw config_error("word lengths must be >= 1");
            if (max_state && l > *max_state) continue;
            words.push_back(l);
        }
        for (std::size_t k = 0; k + 1 < words.size(); ++k) {
            ++g.counts[{words[k], words[k + 1]}];
            g.states.insert(words[k]);
            g.states.insert(words[k + 1]);
        }
    }
    if (g.counts.empty()) {
        throw config_error("no transitions: every sentence has fewer than two words");
    }
    std::map<int, std::int64_t> row_totals;
    for (const auto& [edge, count] : g.counts) row_totals[edge.first] += count;
    for (const auto& [edge, count] : g.counts) {
        g.probabilities[edge] =
            static_cast<double>(count) / static_cast<double>(row_totals[edge.first]);
    }
    return g;
}

FunctionalGraph filter_graph(const TransitionGraph& g) {
    FunctionalGraph f;
    f.states = g.states;
    std::map<int, std::pair<int, std::int64_t>> best;  // state -> (successor, count)
    for (const auto& [edge, count] : g.counts) {
        auto it = best.find(edge.first);
        if (it == best.end() || count > it->second.second) {
            best[edge.first] = {edge.second, count};
        }
        // counts map is ordered by (from, to), so on ties the smaller j wins
        // by arriving first.
    }
    for (const auto& [state, choice] : best) f.successor[state] = choice.first;
    return f;
}

std::set<int> leaves(const TransitionGraph& g) {
    std::set<int> result = g.states;
    for (const auto& [edge, count] : g.counts) {
        if (count > 0) result.erase(edge.second);
    }
    return result;
}

std::set<int> leaves(const FunctionalGraph& f) {
    std::set<int> result = f.states;
    for (const auto& [from, to] : f.successor) result.erase(to);
    return result;
}

std::set<int> absorbing_states(const FunctionalGraph& f) {
    std::set<int> result;
    for (const auto& [from, to] : f.successor) {
        if (from == to) result.insert(from);
    }
    return result;
}

std::vector<std::vector<int>> cycles(const FunctionalGraph& f) {
    // Out-degree <= 1, so every cycle is found by walking until a repeat.
    std::map<int, int> color;  // 0/absent = white, 1 = on current path, 2 = done
    std::vector<std::vector<int>> found;
    for (int start : f.states) {
        if (color[start] != 0) continue;
        std::vector<int> path;
        int node = start;
        while (true) {
            color[node] = 1;
            path.push_back(node);
            auto it = f.successor.find(node);
            if (it == f.successor.end() || color[it->second] == 2) break;
            if (color[it->second] == 1) {
                // Extract the cycle from the current path.
                auto begin = std::find(path.begin(), path.end(), it->second);
                std::vector<int> cycle(begin, path.end());
                auto min_it = std::min_element(cycle.begin(), cycle.end());
                std::rotate(cycle.begin(), min_it, cycle.end());
                found.push_back(std::move(cycle));
                break;
            }
            node = it->second;
        }
        for (int visited : path) color[visited] = 2;
    }
    std::sort(found.begin(), found.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    return found;
}

int max_transient(const FunctionalGraph& f) {
    const std::set<int> leaf_states = leaves(f);
    if (leaf_states.empty()) throw config_error("graph has no leaves");

    std::set<int> on_cycle;
    for (const auto& cycle : cycles(f)) on_cycle.insert(cycle.begin(), cycle.end());

    int best = 0;
    for (int leaf : leaf_states) {
        int steps = 0;
        int node = leaf;
        while (on_cycle.find(node) == on_cycle.end()) {
            auto it = f.successor.find(node);
            if (it == f.successor.end()) break;  // dead end, walk terminates here
            node = it->second;
            ++steps;
        }
        best = std::max(best, steps);
    }
    return best;
}

std::map<int, double> stationary_distribution(const TransitionGraph& g, double restart,
                                              double tol) {
    if (g.states.empty()) throw config_error("machine has no states");
    if (!(restart >= 0.0 && restart <= 1.0)) throw config_error("restart must be in [0,1]");

    const std::vector<int> states(g.states.begin(), g.states.end());
    const auto n = states.size();
    std::map<int, std::size_t> index;
    for (std::size_t i = 0; i < n; ++i) index[states[i]] = i;

    // Sparse row representation of p(i,j).
    std::vector<std::vector<std::pair<std::size_t, double>>> rows(n);
    for (const auto& [edge, p] : g.probabilities) {
        rows[index.at(edge.first)].push_back({index.at(edge.second), p});
    }

    std::vector<double> v(n, 1.0 / static_cast<double>(n));
    std::vector<double> next(n, 0.0);
    const double uniform = 1.0 / static_cast<double>(n);
    constexpr int kMaxIterations = 100000;
    for (int iter = 0; iter < kMaxIterations; ++iter) {
        double dangling = 0.0;
        std::fill(next.begin(), next.end(), 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            if (rows[i].empty()) {
                dangling += v[i];
                continue;
            }
            for (const auto& [j, p] : rows[i]) next[j] += v[i] * p;
        }
        const double base = (restart + (1.0 - restart) * dangling) * uniform;
        double diff = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double updated = (1.0 - restart) * next[i] + base;
            diff += std::abs(updated - v[i]);
            next[i] = updated;
        }
        v.swap(next);
        if (diff < tol) {
            std::map<int, double> result;
            for (std::size_t i = 0; i < n; ++i) result[states[i]] = v[i];
            return result;
        }
    }
    throw std::runtime_error("stationary distribution did not converge");
}

namespace {

std::vector<int> core_from_stationary(const std::map<int, double>& pi, double mass) {
    if (!(mass > 0.0 && mass <= 1.0)) throw config_error("core mass must be in (0,1]");
    std::vector<std::pair<int, double>> ranked(pi.begin(), pi.end());
    std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    std::vector<int> core;
    double cumulative = 0.0;
    for (const auto& [state, p] : ranked) {
        core.push_back(state);
        cumulative += p;
        if (cumulative >= mass) break;
    }
    return core;
}

}  // namespace

std::vector<int> attractive_core(const TransitionGraph& g, double mass) {
    return core_from_stationary(stationary_distribution(g), mass);
}

MachineReport analyze_machine(const TransitionGraph& g, double restart, double core_mass) {
    MachineReport report;
    report.leaves = leaves(g);
    const FunctionalGraph f = filter_graph(g);
    report.absorbing = absorbing_states(f);
    report.cycles = cycles(f);
    if (!leaves(f).empty()) {
        report.max_transient = max_transient(f);
    }
    report.core = core_from_stationary(stationary_distribution(g, restart), core_mass);
    return report;
}

std::string to_dot(const TransitionGraph& g, const std::string& name) {
    std::ostringstream out;
    out << "digraph " << name << " {\n";
    for (int s : g.states) out << "  " << s << ";\n";
    out.precision(6);
    for (const auto& [edge, count] : g.counts) {
        out << "  " << edge.first << " -> " << edge.second << " [label=\"" << count << " ("
            << g.probabilities.at(edge) << ")\"];\n";
    }
    out << "}\n";
    return out.str();
}

std::string to_dot(const FunctionalGraph& f, const std::string& name) {
    std::ostringstream out;
    out << "digraph " << name << " {\n";
    for (int s : f.states) out << "  " << s << ";\n";
    for (const auto& [from, to] : f.successor) {
        out << "  " << from << " -> " << to << ";\n";
    }
    out << "}\n";
    return out.str();
}

}  // namespace mycolex
