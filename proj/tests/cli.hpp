#ifndef CURVELAB_TESTS_CLI_HPP
#define CURVELAB_TESTS_CLI_HPP

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <stdexcept>
#include <string>

namespace cli {

struct Result {
    int code = -1;
    std::string out;
};

// Runs the CLI through the shell; stderr is discarded unless merged.
inline Result run(const std::string& args, bool merge_stderr = false) {
    const std::string cmd = std::string("\"") + CURVELAB_CLI + "\" " + args + (merge_stderr ? " 2>&1" : " 2>/dev/null");
    FILE* p = popen(cmd.c_str(), "r");
    if (!p) throw std::runtime_error("popen failed for " + cmd);
    Result r;
    std::array<char, 4096> buf{};
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
    const int status = pclose(p);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

inline std::string data(const std::string& rel) { return std::string("\"") + CURVELAB_DATA_DIR + "/" + rel + "\""; }

} // namespace cli

#endif // CURVELAB_TESTS_CLI_HPP
