#ifndef IFENT_CLI_HPP_
#define IFENT_CLI_HPP_

#include <iosfwd>
#include <string>
#include <vector>

namespace ifent::cli {

// exit codes: 0 success, 1 property violation, 2 input/usage error
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace ifent::cli

#endif
