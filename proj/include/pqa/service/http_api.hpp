/// @file http_api.hpp
/// @brief JSON HTTP front end over a Pipeline.
///
///   POST /v1/sessions               {user_context, page_product_id} -> {session_id}
///   POST /v1/sessions/{id}/turns    {query} -> turn trace
///   GET  /v1/sessions/{id}          -> session
///   POST /v1/catalog/ingest         {path} -> ingest report
///   POST /v1/eval/run               {judgments_path} -> eval report
///   GET  /v1/healthz                -> {status}
///
/// Errors reply {"error": message} with 400 (bad body), 404 (unknown session)
/// or 500.

#pragma once

#include <string>

#include "pqa/service/pipeline.hpp"

namespace httplib {
class Server;
}

namespace pqa::service {

void mount_routes(httplib::Server& server, Pipeline& pipeline);

/// Blocks until the server stops. Returns false when binding fails.
bool serve(Pipeline& pipeline, const std::string& host, int port);

}  // namespace pqa::service
