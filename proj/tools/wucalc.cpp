#include <iostream>

#include <wucalc/cli.hpp>

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    wucalc::CommandResult res = wucalc::run(args);
    for (const auto& w : res.warnings) std::cerr << "warning: " << w << "\n";
    if (res.json_mode)
        std::cout << res.data.dump(2) << "\n";
    else if (!res.text.empty())
        (res.exit_code == 0 ? std::cout : std::cerr) << res.text << "\n";
    return res.exit_code;
}
