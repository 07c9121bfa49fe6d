#include "viewforge/confidence/forest.hpp"

#include <algorithm>
#include <cmath>

#include "viewforge/util/error.hpp"
#include "viewforge/util/rng.hpp"

namespace viewforge {

namespace {

double entropy(std::size_t pos, std::size_t n) {
    if (n == 0 || pos == 0 || pos == n) return 0.0;
    double p = static_cast<double>(pos) / n;
    return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

SplitTest draw_test(Rng& rng) {
    SplitTest t;
    t.kind = static_cast<SplitTest::Kind>(rng.index(4));
    auto tap = [&](std::int8_t& dx, std::int8_t& dy, std::uint8_t& ch) {
        dx = static_cast<std::int8_t>(static_cast<int>(rng.index(2 * kPatchRadius + 1)) -
                                      kPatchRadius);
        dy = static_cast<std::int8_t>(static_cast<int>(rng.index(2 * kPatchRadius + 1)) -
                                      kPatchRadius);
        ch = static_cast<std::uint8_t>(rng.index(3));
    };
    tap(t.dx1, t.dy1, t.ch1);
    if (t.kind != SplitTest::Kind::kValue) tap(t.dx2, t.dy2, t.ch2);
    return t;
}

struct TreeBuilder {
    const SampleSet& data;
    const ForestConfig& cfg;
    Rng& rng;
    Tree tree;

    double response(const SplitTest& t, const PatchSample& s) const {
        return t.response(data.images[s.image], s.x, s.y);
    }

    int make_leaf(const std::vector<int>& members) {
        TreeLeaf leaf;
        for (int i : members) {
            if (data.samples[i].label) {
                ++leaf.n_pos;
            } else {
                ++leaf.n_neg;
            }
        }
        tree.leaves.push_back(leaf);
        int node_id = static_cast<int>(tree.nodes.size());
        tree.nodes.emplace_back();
        tree.nodes[node_id].leaf = static_cast<std::int32_t>(tree.leaves.size()) - 1;
        return node_id;
    }

    // Best split by Shannon information gain over candidate tests and
    // quantile thresholds, scored on a random node subset.
    bool find_split(const std::vector<int>& members, SplitTest& best) {
        std::vector<int> eval;
        if (static_cast<int>(members.size()) <= cfg.node_samples) {
            eval = members;
        } else {
            for (std::size_t k :
                 rng.sample_without_replacement(members.size(), cfg.node_samples)) {
                eval.push_back(members[k]);
            }
        }
        const std::size_t n = eval.size();

        double best_gain = 1e-12;
        bool found = false;
        std::vector<std::pair<double, int>> resp(n);  // (response, label)
        std::vector<std::size_t> prefix_pos(n + 1);
        for (int trial = 0; trial < cfg.node_tests; ++trial) {
            SplitTest cand = draw_test(rng);
            for (std::size_t i = 0; i < n; ++i) {
                resp[i] = {response(cand, data.samples[eval[i]]), data.samples[eval[i]].label};
            }
            std::sort(resp.begin(), resp.end());
            std::size_t total_pos = 0;
            for (std::size_t i = 0; i < n; ++i) {
                prefix_pos[i] = total_pos;
                total_pos += resp[i].second;
            }
            prefix_pos[n] = total_pos;
            double h_parent = entropy(total_pos, n);
            if (h_parent <= 0.0) return false;  // pure evaluation subset

            double last_thr = std::numeric_limits<double>::quiet_NaN();
            for (int q = 1; q <= cfg.thresholds; ++q) {
                std::size_t k = static_cast<std::size_t>(
                    static_cast<double>(q) * n / (cfg.thresholds + 1));
                if (k == 0 || k >= n) continue;
                double thr = resp[k].first;
                if (thr == last_thr) continue;
                last_thr = thr;
                // left = responses strictly below the threshold
                std::size_t nl =
                    std::lower_bound(resp.begin(), resp.end(),
                                     std::make_pair(thr, std::numeric_limits<int>::min())) -
                    resp.begin();
                if (nl == 0 || nl == n) continue;
                double gain = h_parent -
                              (nl * entropy(prefix_pos[nl], nl) +
                               (n - nl) * entropy(total_pos - prefix_pos[nl], n - nl)) /
                                  n;
                if (gain > best_gain) {
                    best_gain = gain;
                    best = cand;
                    best.threshold = static_cast<float>(thr);
                    found = true;
                }
            }
        }
        return found;
    }

    int build(const std::vector<int>& members, int depth) {
        bool pure = true;
        for (std::size_t i = 1; i < members.size(); ++i) {
            if (data.samples[members[i]].label != data.samples[members[0]].label) {
                pure = false;
                break;
            }
        }
        if (depth >= cfg.max_depth || static_cast<int>(members.size()) < cfg.min_leaf || pure) {
            return make_leaf(members);
        }
        SplitTest split;
        if (!find_split(members, split)) return make_leaf(members);

        std::vector<int> left, right;
        for (int i : members) {
            // threshold came from the evaluation subset: the full membership
            // can still be one-sided, in which case the node stays a leaf
            (response(split, data.samples[i]) < split.threshold ? left : right).push_back(i);
        }
        if (left.empty() || right.empty()) return make_leaf(members);

        int node_id = static_cast<int>(tree.nodes.size());
        tree.nodes.emplace_back();
        tree.nodes[node_id].test = split;
        int l = build(left, depth + 1);
        int r = build(right, depth + 1);
        tree.nodes[node_id].left = l;
        tree.nodes[node_id].right = r;
        return node_id;
    }
};

} // namespace

const TreeLeaf& Tree::leaf_for(const ImageLab& im, int x, int y) const {
    int node = 0;
    while (nodes[node].leaf < 0) {
        node = nodes[node].test.goes_left(im, x, y) ? nodes[node].left : nodes[node].right;
    }
    return leaves[nodes[node].leaf];
}

ConfidenceForest train_forest(const SampleSet& data, const ForestConfig& cfg,
                              TrainReport* report) {
    if (cfg.trees < 1 || cfg.max_depth < 0 || cfg.min_leaf < 1 || cfg.node_tests < 1 ||
        cfg.thresholds < 1 || cfg.node_samples < 2) {
        throw ConfigError("train_forest: invalid configuration");
    }
    const int n = static_cast<int>(data.samples.size());
    if (n < cfg.min_leaf) {
        throw ConfigError("train_forest: fewer samples than min_leaf");
    }

    ConfidenceForest forest;
    forest.config = cfg;

    std::vector<double> oob_sum(n, 0.0);
    std::vector<int> oob_count(n, 0);
    std::vector<char> in_bag(n);

    for (int t = 0; t < cfg.trees; ++t) {
        Rng rng(sub_seed(cfg.seed, static_cast<std::uint64_t>(t)));
        std::fill(in_bag.begin(), in_bag.end(), 0);
        std::vector<int> bag(n);
        for (int i = 0; i < n; ++i) {
            bag[i] = static_cast<int>(rng.index(n));
            in_bag[bag[i]] = 1;
        }

        TreeBuilder builder{data, cfg, rng, {}};
        // the root must end up at node 0: build() appends interior nodes
        // before their children, so the first call returns 0
        builder.build(bag, 0);
        forest.trees.push_back(std::move(builder.tree));

        const Tree& tree = forest.trees.back();
        for (int i = 0; i < n; ++i) {
            if (in_bag[i]) continue;
            const PatchSample& s = data.samples[i];
            oob_sum[i] += tree.leaf_for(data.images[s.image], s.x, s.y).positive_rate();
            ++oob_count[i];
        }
    }

    if (report) {
        int counted = 0, correct = 0;
        for (int i = 0; i < n; ++i) {
            if (oob_count[i] == 0) continue;
            ++counted;
            int pred = oob_sum[i] / oob_count[i] > 0.5 ? 1 : 0;
            correct += pred == data.samples[i].label;
        }
        report->oob_samples = counted;
        report->oob_accuracy = counted ? static_cast<double>(correct) / counted : -1.0;
    }
    return forest;
}

int angle_bin_index(double angle_deg, int bins, double gamma_max_deg) {
    int idx = static_cast<int>(std::floor(angle_deg * bins / gamma_max_deg));
    return std::clamp(idx, 0, bins - 1);  // last bin absorbs >= gamma_max
}

ConfidenceForest restructure_leaves(const ConfidenceForest& forest, const SampleSet& data,
                                    int b, double gamma_max_deg) {
    if (b < 1 || gamma_max_deg <= 0.0) {
        throw ConfigError("restructure_leaves: need b >= 1 and gamma_max > 0");
    }
    ConfidenceForest out = forest;
    out.bins = b;
    out.gamma_max = gamma_max_deg;
    for (Tree& tree : out.trees) {
        for (TreeLeaf& leaf : tree.leaves) {
            leaf.bins.assign(b, BinStats{});
        }
        for (const PatchSample& s : data.samples) {
            if (!std::isfinite(s.angle_deg)) {
                throw ConfigError("restructure_leaves: sample without a finite angle");
            }
            // leaf_for walks const nodes; the leaf is ours to mutate
            const TreeLeaf& found = tree.leaf_for(data.images[s.image], s.x, s.y);
            TreeLeaf& leaf = const_cast<TreeLeaf&>(found);
            BinStats& bin = leaf.bins[angle_bin_index(s.angle_deg, b, gamma_max_deg)];
            if (s.label) {
                ++bin.pos;
            } else {
                ++bin.neg;
            }
        }
        for (TreeLeaf& leaf : tree.leaves) {
            for (BinStats& bin : leaf.bins) {
                bin.confidence =
                    static_cast<float>((bin.pos + 1.0) / (bin.pos + bin.neg + 2.0));
            }
        }
    }
    return out;
}

} // namespace viewforge
