#ifndef CHROMACUT_CLI_HPP
#define CHROMACUT_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace chromacut {

// Exit codes: 0 success, 1 a mathematical finding (collision, failed check),
// 2 usage, input or guard error. args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace chromacut

#endif  // CHROMACUT_CLI_HPP
