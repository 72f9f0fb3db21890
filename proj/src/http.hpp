#pragma once

#include <chrono>
#include <map>
#include <string>

namespace mediagraph::detail {

struct HttpResult {
  bool ok = false;  // transport succeeded (any status)
  int status = 0;
  std::string body;
  std::string final_url;
  std::string error;
};

/// GET that follows up to `max_redirects` redirects by hand so the final
/// URL is known.
HttpResult http_get(const std::string& url, std::chrono::seconds timeout,
                    int max_redirects = 10);

HttpResult http_post_json(const std::string& url, const std::string& body,
                          const std::map<std::string, std::string>& headers,
                          std::chrono::seconds timeout);

}  // namespace mediagraph::detail
