// SPDX-FileCopyrightText: 2026 xumeval contributors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file provider.hpp
 * @brief HTTP client for a remote embedding provider.
 *
 * The provider stands in for whatever encoder produced the embeddings
 * (typically a CLIP service). Contract, over HTTP POST:
 *
 *   request:  {"inputs": ["...", ...], "kind": "text"|"frame"}
 *   response: {"dim": D, "vectors": [[...], ...]}
 *
 * One embedding per input, order preserving. Vectors are renormalized on
 * receipt. Failures raise ProviderError with the HTTP status, attempt
 * count, and a retryable flag; a failed fetch never mutates local state.
 */

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "xumeval/embedding.hpp"
#include "xumeval/error.hpp"

#include <httplib.h>
#include <json.hpp>

namespace xumeval {

enum class PayloadKind { Text, Frame };

inline const char* payload_kind_name(PayloadKind kind) {
    return kind == PayloadKind::Text ? "text" : "frame";
}

/// Client bound to one provider endpoint. Remembers the embedding
/// dimension of the first successful response and rejects any later
/// response that disagrees.
class ProviderClient {
public:
    /// `url` is the full endpoint, e.g. "http://127.0.0.1:8080/embed".
    /// A URL without a path uses "/embed".
    explicit ProviderClient(std::string url) {
        const auto scheme_end = url.find("://");
        const std::size_t authority_begin = scheme_end == std::string::npos ? 0 : scheme_end + 3;
        const auto path_begin = url.find('/', authority_begin);
        if (path_begin == std::string::npos) {
            base_ = url;
            path_ = "/embed";
        } else {
            base_ = url.substr(0, path_begin);
            path_ = url.substr(path_begin);
        }
        if (base_.empty()) throw ArgumentError("empty provider URL");
    }

    const std::string& endpoint_path() const noexcept { return path_; }

    EmbeddingSet fetch(const std::vector<std::string>& inputs, PayloadKind kind) {
        if (inputs.empty()) throw ArgumentError("provider payload must be non-empty");
        ++attempts_;

        nlohmann::json request{{"inputs", inputs}, {"kind", payload_kind_name(kind)}};
        httplib::Client client(base_);
        client.set_connection_timeout(10);
        client.set_read_timeout(30);
        auto res = client.Post(path_, request.dump(), "application/json");
        if (!res) {
            throw ProviderError("provider unreachable at " + base_ + path_, 0, attempts_, true);
        }
        if (res->status < 200 || res->status >= 300) {
            const bool retryable = res->status == 429 || res->status >= 500;
            throw ProviderError("provider returned HTTP " + std::to_string(res->status),
                                res->status, attempts_, retryable);
        }

        nlohmann::json body;
        try {
            body = nlohmann::json::parse(res->body);
        } catch (const nlohmann::json::exception& e) {
            throw ProviderError(std::string("provider response is not valid JSON: ") + e.what(),
                                res->status, attempts_, false);
        }
        std::size_t dim = 0;
        std::vector<std::vector<double>> rows;
        try {
            dim = body.at("dim").get<std::size_t>();
            rows = body.at("vectors").get<std::vector<std::vector<double>>>();
        } catch (const nlohmann::json::exception& e) {
            throw ProviderError(std::string("provider response missing dim/vectors: ") + e.what(),
                                res->status, attempts_, false);
        }
        if (rows.size() != inputs.size()) {
            throw ProviderError("provider returned " + std::to_string(rows.size()) +
                                " vectors for " + std::to_string(inputs.size()) + " inputs",
                                res->status, attempts_, false);
        }
        for (const auto& row : rows) {
            if (row.size() != dim) {
                throw ProviderError("provider vector size disagrees with declared dim " +
                                    std::to_string(dim), res->status, attempts_, false);
            }
        }
        if (expected_dim_ && *expected_dim_ != dim) {
            throw ProviderError("provider dim " + std::to_string(dim) +
                                " disagrees with prior responses (" +
                                std::to_string(*expected_dim_) + ")",
                                res->status, attempts_, false);
        }

        std::vector<std::string> labels;
        labels.reserve(inputs.size());
        for (std::size_t i = 0; i < inputs.size(); ++i) labels.push_back(std::to_string(i));
        auto set = EmbeddingSet::from_rows(std::move(rows), std::move(labels));
        expected_dim_ = dim;  // commit only after full validation
        return set;
    }

private:
    std::string base_;
    std::string path_;
    std::optional<std::size_t> expected_dim_;
    int attempts_ = 0;
};

/// One-shot convenience wrapper around ProviderClient::fetch.
inline EmbeddingSet fetch_remote(const std::string& provider_url,
                                 const std::vector<std::string>& inputs, PayloadKind kind) {
    ProviderClient client(provider_url);
    return client.fetch(inputs, kind);
}

}  // namespace xumeval
