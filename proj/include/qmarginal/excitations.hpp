#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <stdexcept>
#include <vector>

#include "lie.hpp"
#include "scenarios.hpp"

namespace qmarg {

struct ExcitationLayers {
    std::vector<std::vector<Weight>> layers;

    std::vector<std::size_t> sizes() const {
        std::vector<std::size_t> out;
        for (const auto& l : layers) out.push_back(l.size());
        return out;
    }
    /// Union of layers j >= from.
    std::vector<Weight> beyond(std::size_t from) const {
        std::vector<Weight> out;
        for (std::size_t j = from; j < layers.size(); ++j) out.insert(out.end(), layers[j].begin(), layers[j].end());
        return out;
    }
    const std::vector<Weight>& layer(std::size_t j) const {
        static const std::vector<Weight> empty;
        return j < layers.size() ? layers[j] : empty;
    }
};

/// Breadth-first layers over the lowering roots of the highest weight. Throws logic_error if an edge
/// from layer j misses layer j+1 or the layers fail to exhaust the support.
inline ExcitationLayers excitation_layers(const Scenario& s) {
    const auto supp = support(s);
    const auto lam = highest_weight(s);
    const auto minus = lambda_partition(s).delta_minus;

    std::map<std::vector<long>, std::size_t> depth;
    std::set<std::vector<long>> in_support;
    for (const auto& w : supp) in_support.insert(doubled_key(w));
    std::vector<std::vector<long>> steps;
    for (const auto& a : minus) steps.push_back(doubled_key(a.vector));

    ExcitationLayers out;
    std::vector<std::vector<long>> frontier{doubled_key(lam)};
    depth[frontier.front()] = 0;
    while (!frontier.empty()) {
        std::vector<Weight> layer;
        for (const auto& k : frontier) layer.push_back(from_doubled_key(k));
        std::sort(layer.begin(), layer.end(), std::greater<>());
        out.layers.push_back(std::move(layer));
        const std::size_t j = out.layers.size() - 1;

        std::set<std::vector<long>> next;
        for (const auto& k : frontier) {
            for (const auto& st : steps) {
                std::vector<long> t(k.size());
                for (std::size_t i = 0; i < k.size(); ++i) t[i] = k[i] + st[i];
                if (!in_support.count(t)) continue;
                if (depth.count(t)) {
                    throw std::logic_error("lowering edge stays within or returns to an earlier layer in " +
                                           to_string(s));
                }
                next.insert(t);
            }
        }
        frontier.assign(next.begin(), next.end());
        for (const auto& k : frontier) depth[k] = j + 1;
    }
    if (depth.size() != supp.size()) {
        throw std::logic_error("excitation layers do not exhaust the support of " + to_string(s));
    }
    return out;
}

inline bool is_root_distinct(const std::vector<Weight>& weights, const RootSystemSpec& rs) {
    for (std::size_t i = 0; i < weights.size(); ++i) {
        for (std::size_t j = i + 1; j < weights.size(); ++j) {
            if (is_root(rs, weights[i] - weights[j])) return false;
        }
    }
    return true;
}

inline bool pairwise_root_adjacent(const std::vector<Weight>& weights, const RootSystemSpec& rs) {
    for (std::size_t i = 0; i < weights.size(); ++i) {
        for (std::size_t j = i + 1; j < weights.size(); ++j) {
            if (!is_root(rs, weights[i] - weights[j])) return false;
        }
    }
    return true;
}

/// Same predicates against an explicit root list (e.g. the stabilizer roots).
inline bool is_root_distinct(const std::vector<Weight>& weights, const std::vector<Root>& rs) {
    std::set<RatVec> r;
    for (const auto& a : rs) r.insert(a.vector);
    for (std::size_t i = 0; i < weights.size(); ++i) {
        for (std::size_t j = i + 1; j < weights.size(); ++j) {
            if (r.count(weights[i] - weights[j])) return false;
        }
    }
    return true;
}

inline bool pairwise_root_adjacent(const std::vector<Weight>& weights, const std::vector<Root>& rs) {
    std::set<RatVec> r;
    for (const auto& a : rs) r.insert(a.vector);
    for (std::size_t i = 0; i < weights.size(); ++i) {
        for (std::size_t j = i + 1; j < weights.size(); ++j) {
            if (!r.count(weights[i] - weights[j])) return false;
        }
    }
    return true;
}

}  // namespace qmarg
