//
// Copyright (C) 2026 The socperf Authors.
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace socperf {

enum class ErrorCode {
    MalformedDocument,
    DuplicateComponent,
    DanglingHostCluster,
    BandwidthExceedsBus,
    NonPositiveValue,
    CacheTrafficInflated,
    LayerMismatch,
    UnknownComponent,
    UnknownPlatform,
    UnknownNetwork,
    MissingTrace,
    UnsupportedBitWidth,
    UnsupportedPair,
    EmptyEngagement,
    InvalidScenario,
    InfeasibleTarget,
    EmptyRange,
    UnsupportedFormat,
    MissingPower,
    Io,
};

std::string_view to_string(ErrorCode code);

// Every failure the library reports carries one of the codes above so that
// callers (the CLI in particular) can map it onto an exit status.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace socperf
