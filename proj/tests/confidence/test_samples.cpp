#include <doctest.h>

#include "viewforge/confidence/samples.hpp"
#include "viewforge/util/error.hpp"

using namespace viewforge;

namespace {

ImageRgb8 gray_image(const std::string& id, int w, int h, std::uint8_t v) {
    ImageRgb8 im = ImageRgb8::zeros(id, w, h);
    std::fill(im.data.begin(), im.data.end(), v);
    return im;
}

LabelImage blank_labels(const std::string& id, int w, int h) {
    LabelImage lab;
    lab.image_id = id;
    lab.width = w;
    lab.height = h;
    lab.labels.assign(static_cast<std::size_t>(w) * h, LabelImage::kUnlabeled);
    lab.angle_deg.assign(lab.labels.size(), std::numeric_limits<float>::infinity());
    return lab;
}

void put_label(LabelImage& lab, int x, int y, std::uint8_t value, float angle) {
    lab.labels[static_cast<std::size_t>(y) * lab.width + x] = value;
    lab.angle_deg[static_cast<std::size_t>(y) * lab.width + x] = angle;
}

} // namespace

TEST_CASE("extraction balances both classes to the cap, deterministically") {
    // 40x64 interior pixels per half: 1280 positives, 1280 negatives
    ImageRgb8 im = gray_image("a", 108, 66, 128);
    LabelImage lab = blank_labels("a", 108, 66);
    for (int y = 13; y < 53; ++y) {
        for (int x = 13; x < 45; ++x) put_label(lab, x, y, LabelImage::kPositive, 12.0f);
        for (int x = 45; x < 77; ++x) put_label(lab, x, y, LabelImage::kNegative, 31.0f);
    }

    SampleSet a = extract_samples({im}, {lab}, 500, 99);
    REQUIRE(a.samples.size() == 1000);
    int pos = 0;
    for (const auto& s : a.samples) {
        pos += s.label;
        if (s.label) {
            CHECK(s.angle_deg == 12.0f);
        } else {
            CHECK(s.angle_deg == 31.0f);
        }
        CHECK(s.x >= 13);
        CHECK(s.x < 108 - 13);
        CHECK(s.y >= 13);
        CHECK(s.y < 66 - 13);
    }
    CHECK(pos == 500);

    SampleSet b = extract_samples({im}, {lab}, 500, 99);
    REQUIRE(a.samples.size() == b.samples.size());
    for (std::size_t i = 0; i < a.samples.size(); ++i) {
        CHECK(a.samples[i].x == b.samples[i].x);
        CHECK(a.samples[i].y == b.samples[i].y);
        CHECK(a.samples[i].label == b.samples[i].label);
    }
}

TEST_CASE("a class with no labeled pixels is an error naming the class") {
    ImageRgb8 im = gray_image("a", 64, 64, 128);
    LabelImage lab = blank_labels("a", 64, 64);

    SUBCASE("all unlabeled") {
        CHECK_THROWS_WITH_AS(extract_samples({im}, {lab}, 100, 1),
                             doctest::Contains("positive"), ConfigError);
    }
    SUBCASE("negatives missing") {
        put_label(lab, 20, 20, LabelImage::kPositive, 10.0f);
        CHECK_THROWS_WITH_AS(extract_samples({im}, {lab}, 100, 1),
                             doctest::Contains("negative"), ConfigError);
    }
}

TEST_CASE("labels too close to the border are skipped") {
    ImageRgb8 im = gray_image("a", 64, 64, 128);
    LabelImage lab = blank_labels("a", 64, 64);
    put_label(lab, 12, 30, LabelImage::kPositive, 10.0f);   // 12 < patch radius
    put_label(lab, 30, 52, LabelImage::kPositive, 10.0f);   // 52 >= 64 - 13
    put_label(lab, 30, 30, LabelImage::kNegative, 10.0f);
    CHECK_THROWS_WITH_AS(extract_samples({im}, {lab}, 100, 1), doctest::Contains("positive"),
                         ConfigError);
}

TEST_CASE("misaligned inputs are rejected") {
    ImageRgb8 im = gray_image("a", 64, 64, 128);
    LabelImage lab = blank_labels("b", 64, 64);
    CHECK_THROWS_AS(extract_samples({im}, {lab}, 100, 1), ConfigError);

    LabelImage small = blank_labels("a", 32, 32);
    CHECK_THROWS_AS(extract_samples({im}, {small}, 100, 1), ConfigError);
    CHECK_THROWS_AS(extract_samples({im}, {}, 100, 1), ConfigError);
}
