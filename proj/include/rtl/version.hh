#ifndef RTL_VERSION_HH
#define RTL_VERSION_HH

namespace rtl {

inline constexpr const char * tool_version = "0.1.0";

} // namespace rtl

#endif // RTL_VERSION_HH
