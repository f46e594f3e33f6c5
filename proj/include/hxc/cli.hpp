#pragma once

#include "hxc/connection.hpp"
#include "hxc/holosym.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace hxc {

struct OmegaDecl {
    std::string j_name;
    Endo j;
    Endo sharp;
};

struct Directive {
    std::string command;
    std::vector<std::string> args;
    bool expect_pass = true;
};

/// A loaded scene. Every name is unique across the categories and every reference resolved.
struct Scene {
    std::string name, description, origin;
    std::optional<Backend> backend;  // set by the loader
    std::map<std::string, Mat> tangent_endos;
    std::map<std::string, Endo> endos;
    std::map<std::string, DiffForm> forms;
    std::map<std::string, MultiVec> bivectors;
    std::map<std::string, Section> sections;
    std::map<std::string, std::vector<Section>> frames;
    std::map<std::string, std::vector<Vec>> tangent_frames;
    std::map<std::string, OmegaDecl> omegas;
    std::vector<Directive> checks;

    const Backend& b() const { return *backend; }
    const Chart& chart() const { return backend->chart(); }

    // Lookups throw UnknownName. A leading '-' on an endomorphism name negates it.
    Endo endo(const std::string& name) const;
    Mat tangent_endo(const std::string& name) const;
    Triple triple(const std::string& i, const std::string& j, const std::string& k) const;
    const DiffForm& form(const std::string& name) const;
    const MultiVec& bivector(const std::string& name) const;
    Section section(const std::string& name) const;  // named sections and backend basis names
    const std::vector<Section>& frame(const std::string& name) const;
    const std::vector<Vec>& tangent_frame(const std::string& name) const;
    const OmegaDecl& omega(const std::string& name) const;
};

// Errors: SyntaxError (path and position), SchemaError, UnresolvedReference, ConstructionError, IOError.
Scene load_scene(const std::string& path);
Scene parse_scene(const json& doc, const std::string& origin = "<memory>");
Scene parse_scene_text(const std::string& text, const std::string& origin = "<memory>");

// Inverse of section_json on the scene's backend.
Section parse_section(const Scene& s, const json& j, const std::string& path = "section");

const std::vector<std::string>& command_names();

// Runs one command and returns its report; throws hxc::Error for unknown commands, names and bad arguments.
Report run_command(const std::string& command, const Scene& scene, const std::vector<std::string>& args);

// Input-kind errors map to exit code 2, everything else to 1.
bool is_input_error(const std::string& kind);

struct RunOptions {
    bool timing = true;
    std::size_t witness_limit = 0;
};

struct RunResult {
    int exit_code = 0;
    json output;
};

// Never throws for hxc errors: they become an error check (exit 1) or an input error (exit 2).
RunResult run(const std::string& command, const Scene& scene, const std::vector<std::string>& args,
              const RunOptions& opt = {});
// Same contract, from a scene path; load failures give exit code 2.
RunResult run_path(const std::string& command, const std::string& scene_path, const std::vector<std::string>& args,
                   const RunOptions& opt = {});

// A bare fixture name (with or without .json) resolves inside `fixture_dir` when no such file exists.
std::string resolve_scene(const std::string& arg, const std::string& fixture_dir);
std::vector<std::string> list_fixtures(const std::string& fixture_dir);

}  // namespace hxc
