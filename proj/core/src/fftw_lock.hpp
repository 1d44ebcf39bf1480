#pragma once

#include <mutex>

namespace hyperwave::detail {

/// FFTW planning is not thread safe; every planner call goes through this.
std::mutex& fftw_planner_mutex();

}  // namespace hyperwave::detail
