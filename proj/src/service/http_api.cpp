#include "pqa/service/http_api.hpp"

#include <httplib.h>

#include "pqa/catalog/index.hpp"
#include "pqa/service/eval_job.hpp"

namespace pqa::service {
namespace {

void reply(httplib::Response& res, int status, const Json& body) {
    res.status = status;
    res.set_content(body.dump(), "application/json");
}

Json parse_body(const httplib::Request& req) {
    if (req.body.empty()) return Json::object();
    Json j = Json::parse(req.body);
    if (!j.is_object()) throw ParseError("request body must be a JSON object");
    return j;
}

/// Runs `fn`, mapping exceptions onto status codes.
template <class Fn>
void guarded(httplib::Response& res, Fn&& fn) {
    try {
        fn();
    } catch (const UnknownSession& e) {
        reply(res, 404, {{"error", e.what()}});
    } catch (const Json::exception& e) {
        reply(res, 400, {{"error", e.what()}});
    } catch (const ParseError& e) {
        reply(res, 400, {{"error", e.what()}});
    } catch (const eval::SchemaError& e) {
        reply(res, 400, {{"error", e.what()}, {"line", e.line()}});
    } catch (const catalog::DuplicateName& e) {
        reply(res, 400, {{"error", e.what()}});
    } catch (const IoError& e) {
        reply(res, 400, {{"error", e.what()}});
    } catch (const std::exception& e) {
        reply(res, 500, {{"error", e.what()}});
    }
}

}  // namespace

void mount_routes(httplib::Server& server, Pipeline& pipeline) {
    server.Get("/v1/healthz", [](const httplib::Request&, httplib::Response& res) {
        reply(res, 200, {{"status", "ok"}});
    });

    server.Post("/v1/sessions", [&pipeline](const httplib::Request& req, httplib::Response& res) {
        guarded(res, [&] {
            const Json body = parse_body(req);
            UserContext ctx;
            if (auto it = body.find("user_context"); it != body.end() && !it->is_null()) {
                ctx = it->get<UserContext>();
            }
            std::optional<std::string> page;
            if (auto it = body.find("page_product_id"); it != body.end() && !it->is_null()) {
                page = it->get<std::string>();
            }
            const Session s = pipeline.sessions().create(std::move(ctx), std::move(page));
            reply(res, 201, {{"session_id", s.session_id}});
        });
    });

    server.Post(R"(/v1/sessions/([^/]+)/turns)",
                [&pipeline](const httplib::Request& req, httplib::Response& res) {
                    guarded(res, [&] {
                        const Json body = parse_body(req);
                        const auto query = body.at("query").get<std::string>();
                        reply(res, 200, to_json_value(pipeline.handle_turn(req.matches[1], query)));
                    });
                });

    server.Get(R"(/v1/sessions/([^/]+))", [&pipeline](const httplib::Request& req, httplib::Response& res) {
        guarded(res, [&] { reply(res, 200, Json(pipeline.sessions().get(req.matches[1]))); });
    });

    server.Post("/v1/catalog/ingest", [&pipeline](const httplib::Request& req, httplib::Response& res) {
        guarded(res, [&] {
            const Json body = parse_body(req);
            reply(res, 200, Json(pipeline.ingest_catalog(body.at("path").get<std::string>())));
        });
    });

    server.Post("/v1/eval/run", [](const httplib::Request& req, httplib::Response& res) {
        guarded(res, [&] {
            const Json body = parse_body(req);
            const bool group = body.value("group_by_intent", true);
            const auto report = run_eval_job(body.at("judgments_path").get<std::string>(), group);
            reply(res, 200, eval::report_to_json(report));
        });
    });
}

bool serve(Pipeline& pipeline, const std::string& host, int port) {
    httplib::Server server;
    mount_routes(server, pipeline);
    return server.listen(host, port);
}

}  // namespace pqa::service
