// SPDX-FileCopyrightText: 2026 xumeval contributors
// SPDX-License-Identifier: Apache-2.0
//
// End-to-end walkthrough for a single video: build the temporal prompt,
// parse a (mock) model response, validate it against the timeline, and
// score it against a ground-truth summary.

#include <cstdio>
#include <string>
#include <vector>

#include "xumeval/metrics.hpp"
#include "xumeval/parse.hpp"
#include "xumeval/temporal.hpp"

int main() {
    // An 80-frame clip at 10 fps. Shorter than the default 100-slot target,
    // so the normalized timeline clamps to the native length.
    const auto map = xumeval::make_normalized_map(80, xumeval::kDefaultTargetFrames, 10.0);
    std::printf("timeline: %d source frames -> %d normalized slots\n", map.original_count(),
                map.target_count());

    // The prompt interleaves one temporal token per slot with that slot's
    // visual features. Print the first few entries to show the layout.
    const auto sequence = xumeval::build_interleaved_sequence(map);
    std::printf("instruction: %s\n", xumeval::make_task_instruction(xumeval::TaskKind::Both).c_str());
    for (std::size_t i = 0; i < 3; ++i) {
        const auto& entry = sequence.entries[i];
        std::printf("  %s <frame %d, t=%.2fs>\n", xumeval::encode_temporal_token(entry.token).c_str(),
                    entry.source_frame, map.to_original_timestamp(static_cast<int>(i)));
    }
    std::printf("  ... %zu entries total\n", sequence.entries.size());

    // What a temporal-aware model response looks like: prose with embedded
    // frame tokens. [f99] is beyond the 80-slot timeline on purpose.
    const std::string response =
        "[f04] A rider mounts the horse. [f27] They gallop along the shore."
        " [f99] The horse slows near the dunes.";

    auto parsed = xumeval::parse_v2vt(response);
    parsed = xumeval::validate_against_timeline(std::move(parsed), map);

    std::printf("\nmodel response parsed:\n  text: %s\n  frames:", parsed.clean_text.c_str());
    for (int idx : parsed.frame_indices) std::printf(" %d", idx);
    std::printf("\n  dropped out of range: %d\n", parsed.diagnostics.dropped_out_of_range);

    // Score the frame selection against a ground-truth summary.
    const std::vector<int> ground_truth{4, 27, 61};
    const auto score = xumeval::f1_frame_overlap(parsed.frame_indices, ground_truth);
    std::printf("\nframe overlap vs {4, 27, 61}: precision %.4f, recall %.4f, f1 %.4f\n",
                score.precision, score.recall, score.f1);
    return 0;
}
