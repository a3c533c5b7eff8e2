#ifndef RTL_CLI_HH
#define RTL_CLI_HH

#include <iosfwd>
#include <string>
#include <vector>

namespace rtl {

namespace exit_code {
inline constexpr int success = 0;
inline constexpr int usage = 1;
inline constexpr int contract = 2;
inline constexpr int resource = 3;
inline constexpr int check_failed = 4;
} // namespace exit_code

/// Inclusive integer list from "a..b", "a,b,c" or a single value.
std::vector<int> parse_int_list(const std::string & text);

/// Runs one command line (argv[0] is the program name). Results go to `out`,
/// diagnostics to `err`; the return value is the process exit code.
int run_cli(const std::vector<std::string> & args, std::ostream & out, std::ostream & err);

} // namespace rtl

#endif // RTL_CLI_HH
