#define CPPHTTPLIB_OPENSSL_SUPPORT
#include "http.hpp"

#include <httplib.h>

#include <fmt/format.h>

namespace mediagraph::detail {
namespace {

struct Target {
  std::string origin;  // scheme://host[:port]
  std::string path;    // starts with '/'
};

bool split_url(const std::string& url, Target& out) {
  const auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos) return false;
  const auto path_start = url.find('/', scheme_end + 3);
  if (path_start == std::string::npos) {
    out.origin = url;
    out.path = "/";
  } else {
    out.origin = url.substr(0, path_start);
    out.path = url.substr(path_start);
  }
  return !out.origin.empty();
}

std::string resolve(const Target& base, const std::string& location) {
  if (location.find("://") != std::string::npos) return location;
  if (location.rfind("//", 0) == 0) {
    return base.origin.substr(0, base.origin.find("://") + 1) + location;
  }
  if (!location.empty() && location.front() == '/') return base.origin + location;
  const auto slash = base.path.rfind('/');
  return base.origin + base.path.substr(0, slash + 1) + location;
}

httplib::Client make_client(const std::string& origin, std::chrono::seconds timeout) {
  httplib::Client client(origin);
  client.set_follow_location(false);
  client.set_connection_timeout(timeout);
  client.set_read_timeout(timeout);
  client.set_write_timeout(timeout);
  return client;
}

}  // namespace

HttpResult http_get(const std::string& url, std::chrono::seconds timeout,
                    int max_redirects) {
  HttpResult result;
  std::string current = url;
  for (int hop = 0; hop <= max_redirects; ++hop) {
    Target target;
    if (!split_url(current, target)) {
      result.error = fmt::format("invalid URL '{}'", current);
      return result;
    }
    auto client = make_client(target.origin, timeout);
    auto res = client.Get(target.path);
    if (!res) {
      result.error = httplib::to_string(res.error());
      return result;
    }
    result.ok = true;
    result.status = res->status;
    result.final_url = current;
    if (res->status >= 300 && res->status < 400 && res->has_header("Location")) {
      current = resolve(target, res->get_header_value("Location"));
      continue;
    }
    result.body = std::move(res->body);
    return result;
  }
  result.ok = false;
  result.error = fmt::format("more than {} redirects", max_redirects);
  return result;
}

HttpResult http_post_json(const std::string& url, const std::string& body,
                          const std::map<std::string, std::string>& headers,
                          std::chrono::seconds timeout) {
  HttpResult result;
  Target target;
  if (!split_url(url, target)) {
    result.error = fmt::format("invalid URL '{}'", url);
    return result;
  }
  auto client = make_client(target.origin, timeout);
  httplib::Headers h;
  for (const auto& [k, v] : headers) h.emplace(k, v);
  auto res = client.Post(target.path, h, body, "application/json");
  if (!res) {
    result.error = httplib::to_string(res.error());
    return result;
  }
  result.ok = true;
  result.status = res->status;
  result.final_url = url;
  result.body = std::move(res->body);
  return result;
}

}  // namespace mediagraph::detail
