#include "hyperwave/version.hpp"

namespace hyperwave {

std::string_view version() noexcept { return HYPERWAVE_VERSION_STRING; }

}  // namespace hyperwave
