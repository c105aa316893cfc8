#include "pqa/core/http_endpoint.hpp"

#include <httplib.h>

namespace pqa {

Url parse_url(const std::string& url) {
    constexpr std::string_view kScheme = "http://";
    if (!url.starts_with(kScheme)) {
        throw HttpError("unsupported URL (only http:// is available): " + url);
    }
    const auto path_at = url.find('/', kScheme.size());
    Url out;
    out.scheme_host_port = url.substr(0, path_at);
    out.path = path_at == std::string::npos ? "/" : url.substr(path_at);
    if (out.scheme_host_port.size() == kScheme.size()) {
        throw HttpError("URL has no host: " + url);
    }
    return out;
}

namespace {

httplib::Client make_client(const Url& url, std::chrono::milliseconds timeout) {
    httplib::Client client(url.scheme_host_port);
    client.set_connection_timeout(timeout);
    client.set_read_timeout(timeout);
    client.set_write_timeout(timeout);
    return client;
}

Json parse_reply(const httplib::Result& res, const std::string& url) {
    if (!res) {
        throw HttpError(url + ": " + httplib::to_string(res.error()));
    }
    if (res->status < 200 || res->status >= 300) {
        throw HttpError(url + ": HTTP " + std::to_string(res->status));
    }
    try {
        return Json::parse(res->body);
    } catch (const nlohmann::json::parse_error& e) {
        throw HttpError(url + ": reply is not JSON (" + e.what() + ")");
    }
}

}  // namespace

Json http_post_json(const std::string& url, const Json& body,
                    std::chrono::milliseconds timeout) {
    const Url u = parse_url(url);
    auto client = make_client(u, timeout);
    auto res = client.Post(u.path, body.dump(), "application/json");
    return parse_reply(res, url);
}

Json http_get_json(const std::string& url, const std::map<std::string, std::string>& query,
                   std::chrono::milliseconds timeout) {
    const Url u = parse_url(url);
    auto client = make_client(u, timeout);
    httplib::Params params(query.begin(), query.end());
    auto res = client.Get(u.path, params, httplib::Headers{});
    return parse_reply(res, url);
}

}  // namespace pqa
