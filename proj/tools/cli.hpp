#ifndef COHWIT_TOOLS_CLI_HPP
#define COHWIT_TOOLS_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace cohwit::cli {

inline constexpr const char* version = "0.1.0";

enum ExitCode : int { Success = 0, ParseFailure = 2, DomainFailure = 3, InternalFailure = 4 };

/// Runs one command line (without the program name). The report goes to
/// `out` unless --out names a file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace cohwit::cli

#endif // COHWIT_TOOLS_CLI_HPP
