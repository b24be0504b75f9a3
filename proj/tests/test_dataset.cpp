// SPDX-FileCopyrightText: 2026 xumeval contributors
// SPDX-License-Identifier: Apache-2.0

#include <catch_amalgamated.hpp>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "xumeval/dataset.hpp"

using namespace xumeval;

namespace {

std::filesystem::path write_manifest(const char* name, const std::string& content) {
    const auto path = std::filesystem::temp_directory_path() / name;
    std::ofstream out(path);
    out << content;
    return path;
}

const char* kGoodLine =
    R"({"video_id":"v1","duration_s":10.0,"frame_count":10,"fps":1.0,)"
    R"("gt_video_summary":[0,2,5],"gt_text_summary":"A chef [f02] chops.","split":"test"})";

}  // namespace

TEST_CASE("split labels round-trip and reject unknowns") {
    CHECK(parse_split("train") == Split::Train);
    CHECK(parse_split("val") == Split::Val);
    CHECK(parse_split("test") == Split::Test);
    CHECK(split_name(Split::Val) == "val");
    CHECK_THROWS_AS(parse_split("dev"), ParseError);
}

TEST_CASE("manifest loads a clean file") {
    const auto path = write_manifest("xum_manifest_ok.jsonl", std::string(kGoodLine) + "\n");
    const auto records = load_manifest(path);
    REQUIRE(records.size() == 1);
    CHECK(records[0].video_id == "v1");
    CHECK(records[0].frame_count == 10);
    CHECK(records[0].normalized_len(100) == 10);
    CHECK(records[0].gt_video_summary == std::vector<int>{0, 2, 5});
    CHECK_FALSE(records[0].gt_frame_scores.has_value());
    std::filesystem::remove(path);
}

TEST_CASE("manifest collects every problem with line numbers") {
    const std::string bad =
        std::string(kGoodLine) + "\n" +
        R"({"video_id":"","duration_s":5.0,"frame_count":5,"fps":1.0,)" +
        R"("gt_video_summary":[9],"gt_text_summary":"x","split":"dev"})" + "\n" +
        std::string(kGoodLine) + "\n";
    const auto path = write_manifest("xum_manifest_bad.jsonl", bad);
    try {
        load_manifest(path);
        FAIL("expected LoadError");
    } catch (const LoadError& e) {
        const std::string what = e.what();
        CHECK(what.find("line 2") != std::string::npos);       // empty id or bad split
        CHECK(what.find("duplicate video_id") != std::string::npos);
        CHECK(what.find("line 3") != std::string::npos);       // the duplicate
    }
    std::filesystem::remove(path);
}

TEST_CASE("manifest validates physical consistency") {
    // frame_count far from duration * fps
    const std::string line =
        R"({"video_id":"v2","duration_s":10.0,"frame_count":300,"fps":1.0,)"
        R"("gt_video_summary":[0],"gt_text_summary":"x","split":"train"})";
    const auto path = write_manifest("xum_manifest_phys.jsonl", line + "\n");
    CHECK_THROWS_AS(load_manifest(path), LoadError);
    std::filesystem::remove(path);
}

TEST_CASE("manifest checks gt score length against the normalized timeline") {
    // frame_count 200 -> normalized length 100, so 200 scores is wrong
    std::string line =
        R"({"video_id":"v3","duration_s":200.0,"frame_count":200,"fps":1.0,)"
        R"("gt_video_summary":[0],"gt_text_summary":"x","split":"train",)"
        R"("gt_frame_scores":[)";
    for (int i = 0; i < 200; ++i) line += (i ? ",0.5" : "0.5");
    line += "]}";
    const auto path = write_manifest("xum_manifest_scores.jsonl", line + "\n");
    CHECK_THROWS_AS(load_manifest(path, 100), LoadError);
    std::filesystem::remove(path);
}

TEST_CASE("unsorted ground-truth summaries are rejected") {
    const std::string line =
        R"({"video_id":"v4","duration_s":10.0,"frame_count":10,"fps":1.0,)"
        R"("gt_video_summary":[5,2],"gt_text_summary":"x","split":"train"})";
    const auto path = write_manifest("xum_manifest_unsorted.jsonl", line + "\n");
    CHECK_THROWS_AS(load_manifest(path), LoadError);
    std::filesystem::remove(path);
}

TEST_CASE("missing manifest file raises LoadError") {
    CHECK_THROWS_AS(load_manifest("/nonexistent/manifest.jsonl"), LoadError);
}

TEST_CASE("redundancy filter keeps the first of each similar pair") {
    // 3 frames: 0 and 1 similar (0.95), 2 distinct
    const SimMatrix sims(3, {1.0, 0.95, 0.1,
                             0.95, 1.0, 0.2,
                             0.1, 0.2, 1.0});
    CHECK(redundancy_filter(sims, 0.93) == std::vector<int>{0, 2});
    CHECK(redundancy_filter(sims, 0.96) == std::vector<int>{0, 1, 2});
    // threshold monotonicity: raising the threshold keeps at least as much
    CHECK(redundancy_filter(sims, 0.05) == std::vector<int>{0});
}

TEST_CASE("redundancy filter is idempotent") {
    const SimMatrix sims(4, {1.0, 0.2, 0.94, 0.1,
                             0.2, 1.0, 0.3, 0.95,
                             0.94, 0.3, 1.0, 0.2,
                             0.1, 0.95, 0.2, 1.0});
    const auto kept = redundancy_filter(sims, 0.93);
    CHECK(kept == std::vector<int>{0, 1});
    // running the filter on the kept subset changes nothing
    const auto again = redundancy_filter(
        kept.size(), [&](std::size_t i, std::size_t j) {
            return sims.at(static_cast<std::size_t>(kept[i]), static_cast<std::size_t>(kept[j]));
        },
        0.93);
    CHECK(again == std::vector<int>{0, 1});
}

TEST_CASE("greedy keep-first is not monotone in the kept count") {
    // Raising the threshold can admit an early frame that then shields out
    // several later ones, so |kept| is not monotone in the threshold. This
    // pins the intended behavior of the order-respecting greedy scan.
    const SimMatrix sims(4, {1.0, 0.5, 0.05, 0.05,
                             0.5, 1.0, 0.9, 0.9,
                             0.05, 0.9, 1.0, 0.05,
                             0.05, 0.9, 0.05, 1.0});
    CHECK(redundancy_filter(sims, 0.4) == std::vector<int>{0, 2, 3});  // frame 1 dropped
    CHECK(redundancy_filter(sims, 0.7) == std::vector<int>{0, 1});     // frame 1 shields 2 and 3
}

TEST_CASE("redundancy filter validates the threshold") {
    const SimMatrix sims(1, {1.0});
    CHECK_THROWS_AS(redundancy_filter(sims, 0.0), ArgumentError);
    CHECK_THROWS_AS(redundancy_filter(sims, 1.5), ArgumentError);
    CHECK_NOTHROW(redundancy_filter(sims, 1.0));
}

TEST_CASE("redundancy filter accepts embeddings with cosine similarity") {
    const auto set = EmbeddingSet::from_rows({{1.0, 0.0}, {0.999, 0.01}, {0.0, 1.0}});
    const auto kept = redundancy_filter(set, 0.93);
    CHECK(kept == std::vector<int>{0, 2});
}

TEST_CASE("XSIM files round-trip through the loader") {
    const auto path = std::filesystem::temp_directory_path() / "xum_test.xsim";
    {
        std::ofstream out(path, std::ios::binary);
        out.write("XSIM", 4);
        const std::uint32_t n = 2;
        out.write(reinterpret_cast<const char*>(&n), 4);
        const float values[4] = {1.0f, 0.5f, 0.5f, 1.0f};
        out.write(reinterpret_cast<const char*>(values), sizeof(values));
    }
    const auto sims = load_similarity_file(path);
    CHECK(sims.size() == 2);
    CHECK(sims.at(0, 1) == Catch::Approx(0.5));
    CHECK_THROWS_AS(sims.at(2, 0), RangeError);
    std::filesystem::remove(path);
}

TEST_CASE("XSIM loader rejects bad headers and truncation") {
    const auto path = std::filesystem::temp_directory_path() / "xum_bad.xsim";
    {
        std::ofstream out(path, std::ios::binary);
        out.write("XSIX", 4);
    }
    CHECK_THROWS_AS(load_similarity_file(path), FormatError);
    {
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        out.write("XSIM", 4);
        const std::uint32_t n = 3;
        out.write(reinterpret_cast<const char*>(&n), 4);
        const float one = 1.0f;  // 1 of 9 floats present
        out.write(reinterpret_cast<const char*>(&one), 4);
    }
    CHECK_THROWS_AS(load_similarity_file(path), FormatError);
    std::filesystem::remove(path);
}

TEST_CASE("corpus stats aggregate the analytic means") {
    std::vector<VideoRecord> records(2);
    records[0].video_id = "a";
    records[0].duration_s = 100.0;
    records[0].frame_count = 100;
    records[0].gt_video_summary = {0, 1, 2, 3};         // 4 frames
    records[0].gt_text_summary = "one two three [f00]"; // 3 text tokens after stripping
    records[0].split = Split::Train;
    records[1].video_id = "b";
    records[1].duration_s = 200.0;
    records[1].frame_count = 200;
    records[1].gt_video_summary = {0, 1};               // 2 frames
    records[1].gt_text_summary = "four five";           // 2 text tokens
    records[1].split = Split::Test;

    const auto stats = corpus_stats(records);
    CHECK(stats.n_videos == 2);
    CHECK(stats.mean_duration_s == Catch::Approx(150.0));
    CHECK(stats.mean_text_tokens == Catch::Approx(2.5));
    CHECK(stats.mean_video_summary_frames == Catch::Approx(3.0));
    CHECK(stats.mean_compression_ratio == Catch::Approx((0.04 + 0.01) / 2.0));

    const auto counts = split_counts(records);
    CHECK(counts.train == 1);
    CHECK(counts.val == 0);
    CHECK(counts.test == 1);

    CHECK_THROWS_AS(corpus_stats(std::vector<VideoRecord>{}), ArgumentError);
}
