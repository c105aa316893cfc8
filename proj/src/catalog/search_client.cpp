#include "pqa/catalog/search_client.hpp"

#include "pqa/core/http_endpoint.hpp"

namespace pqa::catalog {

HttpSearchClient::HttpSearchClient(std::string url, std::chrono::milliseconds timeout)
    : url_(std::move(url)), timeout_(timeout) {}

std::optional<std::string> HttpSearchClient::lookup(const std::string& query) {
    Json reply;
    try {
        reply = http_get_json(url_, {{"q", query}}, timeout_);
    } catch (const HttpError& e) {
        throw SearchClientError(e.what());
    }
    auto it = reply.find("canonical_name");
    if (it == reply.end() || it->is_null()) return std::nullopt;
    if (!it->is_string()) throw SearchClientError(url_ + ": canonical_name is not a string");
    return it->get<std::string>();
}

}  // namespace pqa::catalog
