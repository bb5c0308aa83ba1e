#ifndef CMOPBENCH_VERSION_HPP
#define CMOPBENCH_VERSION_HPP

namespace cmopbench {

inline constexpr const char* kVersion = "0.1.0";

} // namespace cmopbench

#endif
