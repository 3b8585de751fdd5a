// Golden-file cases for the command-line tool. cases.txt lists one case per
// line as "name: arguments", where @DIR@ stands for the golden directory;
// name.txt and name.json hold the expected
// transcript (stdout, then the exit status) in text and JSON mode, both run
// with --no-timing.
#ifndef CHARP_TESTS_GOLDEN_HPP
#define CHARP_TESTS_GOLDEN_HPP

#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

namespace golden {

struct Case
{
    std::string name;
    std::string command;
};

struct Run
{
    std::string output;
    int exit_code = -1;

    std::string transcript() const { return output + "[exit " + std::to_string(exit_code) + "]\n"; }
};

inline std::string path(const std::string& dir, const std::string& name, const std::string& ext)
{
    return dir + "/" + name + "." + ext;
}

inline std::string read_file(const std::string& file)
{
    std::ifstream in(file, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline std::vector<Case> load_cases(const std::string& dir)
{
    std::vector<Case> out;
    std::ifstream in(dir + "/cases.txt");
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#')
            continue;
        auto colon = line.find(':');
        if (colon == std::string::npos)
            continue;
        std::size_t start = line.find_first_not_of(' ', colon + 1);
        std::string args = start == std::string::npos ? "" : line.substr(start);
        for (auto at = args.find("@DIR@"); at != std::string::npos; at = args.find("@DIR@"))
            args.replace(at, 5, dir);
        out.push_back({line.substr(0, colon), args});
    }
    return out;
}

// Runs "cli arguments" through the shell so cases.txt can use shell quoting.
inline Run run_cli(const std::string& cli, const std::string& arguments)
{
    Run r;
    std::string cmd = "'" + cli + "' " + arguments + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe)
        return r;
    std::array<char, 4096> buf;
    std::size_t n;
    while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0)
        r.output.append(buf.data(), n);
    int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

} // namespace golden

#endif
