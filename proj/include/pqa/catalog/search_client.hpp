#pragma once

#include <chrono>
#include <optional>
#include <string>

#include "pqa/core/error.hpp"

namespace pqa::catalog {

class SearchClientError : public Error {
public:
    using Error::Error;
};

/// Maps a free-text product name to a canonical catalog name.
class SearchClient {
public:
    virtual ~SearchClient() = default;
    /// std::nullopt when the search has no hit; throws SearchClientError on failure.
    virtual std::optional<std::string> lookup(const std::string& query) = 0;
};

/// GET <url>?q=<query> -> {canonical_name}; a null or missing name is "no hit".
class HttpSearchClient final : public SearchClient {
public:
    explicit HttpSearchClient(std::string url,
                              std::chrono::milliseconds timeout = std::chrono::seconds(2));
    std::optional<std::string> lookup(const std::string& query) override;

private:
    std::string url_;
    std::chrono::milliseconds timeout_;
};

}  // namespace pqa::catalog
