// SPDX-FileCopyrightText: 2026 xumeval contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

namespace xumeval {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace xumeval
