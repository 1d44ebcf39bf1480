#pragma once

#include <string_view>

namespace hyperwave {

/// Library version, "major.minor.patch".
std::string_view version() noexcept;

}  // namespace hyperwave
