#pragma once

// The fixture corpus: JSON inputs under FIXTURE_DIR described by
// manifest.json, with the exit code and error kind each command must give.

#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace corpus {

inline std::string fixture_dir() { return FIXTURE_DIR; }

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

inline std::string fixture(const std::string& name) {
  return read_file(fixture_dir() + "/" + name);
}

struct Command {
  std::vector<std::string> args;
  int exit = 0;
  std::string kind;  // error kind when exit is 2 and the CLI reports one

  std::string label() const {
    std::string out;
    for (const auto& a : args) out += (out.empty() ? "" : " ") + a;
    return out;
  }
};

struct Object {
  std::string file;
  std::string type;  // fan, quiver, representation, descent
  std::string fan;   // fan file a representation refers to, if any
};

struct Manifest {
  std::vector<Command> commands;
  std::vector<Object> objects;
};

inline Manifest manifest() {
  const auto j = nlohmann::json::parse(fixture("manifest.json"));
  Manifest m;
  for (const auto& c : j.at("commands")) {
    Command cmd;
    cmd.args = c.at("args").get<std::vector<std::string>>();
    cmd.exit = c.at("exit").get<int>();
    if (c.contains("kind")) cmd.kind = c.at("kind").get<std::string>();
    m.commands.push_back(std::move(cmd));
  }
  for (const auto& o : j.at("objects")) {
    m.objects.push_back({o.at("file").get<std::string>(),
                         o.at("type").get<std::string>(),
                         o.value("fan", std::string())});
  }
  return m;
}

struct Output {
  int exit = -1;
  std::string out;
};

inline std::string shell_quote(const std::string& s) {
  std::string q = "'";
  for (char c : s) q += c == '\'' ? std::string("'\\''") : std::string(1, c);
  return q + "'";
}

/// Runs `program args...` from the fixture directory; stderr is discarded.
inline Output run(const std::string& program,
                  const std::vector<std::string>& args) {
  std::string cmd = "cd " + shell_quote(fixture_dir()) + " && " +
                    shell_quote(program);
  for (const auto& a : args) cmd += " " + shell_quote(a);
  cmd += " 2>/dev/null";
  Output r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(pipe);
  r.exit = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

}  // namespace corpus
