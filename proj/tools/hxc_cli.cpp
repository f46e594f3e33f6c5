#include "hxc/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>

#ifndef HXC_FIXTURES
#define HXC_FIXTURES ""
#endif

namespace {

// Negated names such as -J are positionals; move everything but the known options behind "--".
std::vector<std::string> reorder(int argc, char** argv) {
    std::vector<std::string> opts, pos;
    for (int a = 1; a < argc; ++a) {
        std::string t = argv[a];
        if (t == "--") {
            for (++a; a < argc; ++a) pos.push_back(argv[a]);
            break;
        }
        const bool valued = t == "--out" || t == "--witness-limit";
        if (valued || t == "--no-timing" || t == "--fixtures" || t == "-h" || t == "--help" ||
            t.rfind("--out=", 0) == 0 || t.rfind("--witness-limit=", 0) == 0) {
            opts.push_back(t);
            if (valued && a + 1 < argc) opts.push_back(argv[++a]);
        } else {
            pos.push_back(t);
        }
    }
    opts.push_back("--");
    opts.insert(opts.end(), pos.begin(), pos.end());
    return opts;
}

std::string fixture_dir() {
    const char* env = std::getenv("HXC_FIXTURES");
    return env && *env ? env : HXC_FIXTURES;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact Courant-algebroid calculus on scene files"};
    std::string command, scene, out;
    std::vector<std::string> args;
    bool no_timing = false, fixtures = false;
    std::size_t witness_limit = 0;

    std::string cmds;
    for (const auto& c : hxc::command_names()) cmds += (cmds.empty() ? "" : ", ") + c;
    app.add_option("command", command, "One of: " + cmds);
    app.add_option("scene", scene, "Scene file, or the name of a bundled fixture");
    app.add_option("args", args, "Command arguments (names from the scene, constants)");
    app.add_option("--out", out, "Write the report to this path instead of stdout");
    app.add_flag("--no-timing", no_timing, "Omit timing fields, for byte-identical reports");
    app.add_flag("--fixtures", fixtures, "List bundled fixture scenes and exit");
    app.add_option("--witness-limit", witness_limit, "Truncate witness arrays to N entries (0 keeps all)");

    try {
        std::vector<std::string> toks = reorder(argc, argv);
        std::reverse(toks.begin(), toks.end());
        app.parse(toks);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    if (fixtures) {
        for (const auto& f : hxc::list_fixtures(fixture_dir())) std::cout << f << "\n";
        return 0;
    }
    if (command.empty() || scene.empty()) {
        std::cerr << app.help();
        return 2;
    }

    hxc::RunOptions opt;
    opt.timing = !no_timing;
    opt.witness_limit = witness_limit;
    hxc::RunResult r = hxc::run_path(command, hxc::resolve_scene(scene, fixture_dir()), args, opt);

    const std::string text = r.output.dump(2) + "\n";
    if (out.empty()) {
        std::cout << text;
    } else {
        std::ofstream f(out);
        if (!f) {
            std::cerr << "cannot write " << out << "\n";
            return 2;
        }
        f << text;
    }
    return r.exit_code;
}
