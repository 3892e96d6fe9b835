#include "textedit/http.hpp"

#define CPPHTTPLIB_OPENSSL_SUPPORT
#include <httplib.h>

#include <cstdlib>
#include <thread>

namespace textedit {

Endpoint parse_endpoint(const std::string& url)
{
    const auto scheme_end = url.find("://");
    if (scheme_end == std::string::npos)
        throw TransportError("endpoint '" + url + "' has no scheme");
    const std::string scheme = url.substr(0, scheme_end);
    if (scheme != "http" && scheme != "https")
        throw TransportError("endpoint '" + url + "' must use http or https");
    const auto path_start = url.find('/', scheme_end + 3);
    Endpoint ep;
    if (path_start == std::string::npos) {
        ep.origin = url;
        ep.path = "/";
    } else {
        ep.origin = url.substr(0, path_start);
        ep.path = url.substr(path_start);
    }
    if (ep.origin.size() <= scheme_end + 3)
        throw TransportError("endpoint '" + url + "' has no host");
    return ep;
}

std::string post_json(const Endpoint& endpoint, const std::string& body, const std::string& bearer_token,
                      const HttpRetryPolicy& policy, std::size_t* attempts)
{
    httplib::Client client(endpoint.origin);
    const auto secs = std::chrono::duration_cast<std::chrono::seconds>(policy.timeout);
    const auto usecs = std::chrono::duration_cast<std::chrono::microseconds>(policy.timeout - secs);
    client.set_connection_timeout(secs.count(), usecs.count());
    client.set_read_timeout(secs.count(), usecs.count());
    client.set_write_timeout(secs.count(), usecs.count());

    httplib::Headers headers;
    if (!bearer_token.empty())
        headers.emplace("Authorization", "Bearer " + bearer_token);

    std::string last_error;
    auto backoff = policy.backoff;
    for (int attempt = 0; attempt <= policy.max_retries; ++attempt) {
        if (attempt > 0) {
            std::this_thread::sleep_for(backoff);
            backoff *= 2;
        }
        if (attempts)
            ++*attempts;
        auto res = client.Post(endpoint.path, headers, body, "application/json");
        if (!res) {
            last_error = httplib::to_string(res.error());
            continue;
        }
        if (res->status >= 200 && res->status < 300)
            return res->body;
        last_error = "HTTP status " + std::to_string(res->status);
        if (res->status != 429 && res->status < 500)
            break;
    }
    throw TransportError("request to " + endpoint.origin + endpoint.path + " failed: " + last_error);
}

std::string token_from_env(const std::string& name)
{
    if (name.empty())
        return {};
    const char* v = std::getenv(name.c_str());
    return v ? std::string(v) : std::string();
}

} // namespace textedit
