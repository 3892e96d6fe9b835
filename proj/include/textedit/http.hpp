#pragma once

#include <chrono>
#include <stdexcept>
#include <string>

namespace textedit {

class TransportError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct HttpRetryPolicy {
    std::chrono::milliseconds timeout{10000};
    int max_retries = 3;
    std::chrono::milliseconds backoff{200};  // doubled after every failed attempt
};

struct Endpoint {
    std::string origin;  // scheme://host[:port]
    std::string path;    // always starts with '/'
};

Endpoint parse_endpoint(const std::string& url);

/// POSTs a JSON body and returns the response body of the first 2xx reply.
/// Connection failures, 429 and 5xx are retried; other statuses fail at once.
/// `attempts` is incremented once per request sent.
std::string post_json(const Endpoint& endpoint, const std::string& body, const std::string& bearer_token,
                      const HttpRetryPolicy& policy, std::size_t* attempts = nullptr);

/// Value of the named environment variable, empty when unset or `name` is empty.
std::string token_from_env(const std::string& name);

} // namespace textedit
