/// @file http_endpoint.hpp
/// @brief Minimal JSON-over-HTTP client used by every external provider slot.

#pragma once

#include <chrono>
#include <map>
#include <string>

#include "pqa/core/error.hpp"
#include "pqa/core/json_io.hpp"

namespace pqa {

/// Transport failure, timeout, non-2xx status, or an unparseable reply.
class HttpError : public Error {
public:
    using Error::Error;
};

struct Url {
    std::string scheme_host_port;  // "http://127.0.0.1:8080"
    std::string path;              // "/v1/rewrite", never empty
};

/// Throws HttpError on anything other than http://host[:port][/path].
Url parse_url(const std::string& url);

Json http_post_json(const std::string& url, const Json& body,
                    std::chrono::milliseconds timeout);

Json http_get_json(const std::string& url, const std::map<std::string, std::string>& query,
                   std::chrono::milliseconds timeout);

}  // namespace pqa
