//
// Copyright (C) 2026 The socperf Authors.
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <span>
#include <string_view>

namespace socperf::detail {

struct BundledDocument {
    std::string_view path;  // relative to the data/ directory
    std::string_view text;
};

// Generated at configure time from data/**/*.json.
std::span<const BundledDocument> bundled_documents();

}  // namespace socperf::detail
