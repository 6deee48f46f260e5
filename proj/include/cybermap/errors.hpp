#pragma once

#include <stdexcept>
#include <string>

namespace cybermap {

enum class Errc {
    MalformedUrl,
    UnresolvableSuffix,
    OutsideModel,
    EmptyRegistry,
    ZeroContour,
    InsufficientData,
    DegenerateVariance,
    MissingFixture,
    ProviderUnavailable,
    Unparseable,
    RateLimited,
    BadInput,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
public:
    Error(Errc code, std::string message)
        : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

} // namespace cybermap
