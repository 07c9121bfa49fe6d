#include <doctest.h>

#include "support/labelgen_helpers.hpp"
#include "viewforge/labelgen/voting.hpp"
#include "viewforge/util/rng.hpp"

using namespace viewforge;

namespace {

struct VoteScene {
    TriangleMesh mesh = vftest::make_grid(4.0, 4.0, 6, 6);
    Vec3 center{2.0, 2.0, 0.0};
    TripletRecord query;
    std::vector<TripletRecord> refs;

    explicit VoteScene(int n_refs) {
        query = vftest::make_record(
            0, vftest::triplet_cameras(center + Vec3(0, 0, 3.0), center, 0.25, "q"), mesh);
        for (int i = 0; i < n_refs; ++i) {
            double a = 2.0 * M_PI * i / n_refs;
            double t = deg2rad(30.0);
            Vec3 dir(std::sin(t) * std::cos(a), std::sin(t) * std::sin(a), std::cos(t));
            auto rec = vftest::make_record(
                i + 1,
                vftest::triplet_cameras(center + 3.0 * dir, center, 0.25,
                                        "r" + std::to_string(i)),
                mesh);
            vftest::grant_all_support(rec);
            refs.push_back(std::move(rec));
        }
    }

    std::vector<const TripletRecord*> ref_ptrs() const {
        std::vector<const TripletRecord*> p;
        for (const auto& r : refs) p.push_back(&r);
        return p;
    }
};

} // namespace

TEST_CASE("agreeing references cast positive votes only") {
    VoteScene s(3);
    auto tally = cast_votes(s.query, 0, s.ref_ptrs(), VotingConfig{});
    const auto& g = s.query.grids[0];
    int center_idx = static_cast<int>(g.index(g.width / 2, g.height / 2));
    CHECK(tally.positive[center_idx] > 0.0f);
    CHECK(tally.negative[center_idx] == 0.0f);

    auto labels = label_from_votes(tally, "q0", 22.0);
    CHECK(labels.labels[center_idx] == LabelImage::kPositive);
    CHECK(labels.angle_deg[center_idx] == doctest::Approx(22.0f));
}

TEST_CASE("unsupported references never vote") {
    VoteScene s(2);
    for (auto& r : s.refs) vftest::grant_all_support(r, 0);
    auto tally = cast_votes(s.query, 0, s.ref_ptrs(), VotingConfig{});
    for (auto v : tally.positive) CHECK(v == 0.0f);
    for (auto v : tally.negative) CHECK(v == 0.0f);
}

TEST_CASE("outliers in front of and behind the surface draw negative votes") {
    VoteScene s(3);
    auto& g = s.query.grids[0];
    std::size_t behind = g.index(g.width / 2, g.height / 2);
    std::size_t front = g.index(g.width / 2 - 6, g.height / 2);
    REQUIRE(g.valid(static_cast<int>(behind % g.width), static_cast<int>(behind / g.width)));

    // fabricate outliers: one measurement pushed past the plane, one pulled
    // toward the camera (the Fig-style left and right blocking cases)
    Camera qcam = s.query.cameras[0];
    auto fake = [&](std::size_t idx, double scale) {
        int x = static_cast<int>(idx % g.width);
        int y = static_cast<int>(idx / g.width);
        double d = g.depth[idx] * scale;
        g.depth[idx] = static_cast<float>(d);
        g.point[idx] = unproject_pixel(qcam, Vec2(x, y), d);
    };
    fake(behind, 2.0);  // references block the query ray
    fake(front, 0.5);   // query point blocks the reference rays

    auto tally = cast_votes(s.query, 0, s.ref_ptrs(), VotingConfig{});
    CHECK(tally.negative[behind] > 0.0f);
    CHECK(tally.positive[behind] == 0.0f);
    CHECK(tally.negative[front] > 0.0f);
    CHECK(tally.positive[front] == 0.0f);

    auto labels = label_from_votes(tally, "q0", 22.0);
    CHECK(labels.labels[behind] == LabelImage::kNegative);
    CHECK(labels.labels[front] == LabelImage::kNegative);
}

TEST_CASE("each reference votes at most once per pixel") {
    VoteScene s(2);
    auto tally = cast_votes(s.query, 0, s.ref_ptrs(), VotingConfig{});
    // with two references, the combined vote magnitude per pixel cannot
    // exceed two votes of the largest possible weight
    float max_w = 0.0f;
    for (const auto& r : s.refs) {
        for (const auto& rg : r.grids) {
            for (std::size_t i = 0; i < rg.sigma.size(); ++i) {
                if (std::isfinite(rg.sigma[i]) && rg.support[i] > 0) {
                    max_w = std::max(max_w, rg.support[i] / rg.sigma[i]);
                }
            }
        }
    }
    for (std::size_t i = 0; i < tally.positive.size(); ++i) {
        CHECK(tally.positive[i] + tally.negative[i] <= 2.0f * max_w * 1.0001f);
    }
}

TEST_CASE("ten percent outliers get flushed out") {
    VoteScene s(5);
    auto& g = s.query.grids[0];
    Camera qcam = s.query.cameras[0];
    Rng rng(777);

    std::vector<std::size_t> corrupted;
    for (int y = 0; y < g.height; ++y) {
        for (int x = 0; x < g.width; ++x) {
            std::size_t i = g.index(x, y);
            if (!g.valid(x, y)) continue;
            if (rng.uniform() >= 0.10) continue;
            double scale = rng.uniform() < 0.5 ? 0.5 : 2.0;
            double d = g.depth[i] * scale;
            g.depth[i] = static_cast<float>(d);
            g.point[i] = unproject_pixel(qcam, Vec2(x, y), d);
            corrupted.push_back(i);
        }
    }
    REQUIRE(corrupted.size() > 50);

    auto tally = cast_votes(s.query, 0, s.ref_ptrs(), VotingConfig{});
    auto labels = label_from_votes(tally, "q0", 22.0);

    int neg_only = 0;
    for (auto i : corrupted) {
        if (tally.negative[i] > 0.0f && tally.positive[i] == 0.0f) ++neg_only;
    }
    CHECK(neg_only >= static_cast<int>(corrupted.size() * 95) / 100);

    // overall labeling accuracy vs construction: corrupted -> negative,
    // clean valid -> positive
    int labeled = 0, right = 0;
    std::vector<char> is_corrupt(tally.positive.size(), 0);
    for (auto i : corrupted) is_corrupt[i] = 1;
    for (std::size_t i = 0; i < tally.positive.size(); ++i) {
        if (labels.labels[i] == LabelImage::kUnlabeled) continue;
        ++labeled;
        bool neg = labels.labels[i] == LabelImage::kNegative;
        right += neg == static_cast<bool>(is_corrupt[i]);
    }
    CHECK(labeled > 1000);
    CHECK(right >= labeled * 95 / 100);
}

TEST_CASE("label_from_votes tie handling") {
    VoteTally t;
    t.width = 2;
    t.height = 1;
    t.positive = {2.0f, 1.0f};
    t.negative = {0.0f, 1.0f};
    auto im = label_from_votes(t, "x", 10.0);
    CHECK(im.labels[0] == LabelImage::kPositive);
    CHECK(im.labels[1] == LabelImage::kUnlabeled);
    CHECK(!std::isfinite(im.angle_deg[1]));
    CHECK(im.density() == doctest::Approx(0.5));
}
