#include "quenum/machine_io.hpp"

#include <fstream>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "quenum/errors.hpp"

namespace quenum {

namespace {

using nlohmann::json;

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

MachineSpec parse_builtin(const std::string& name) {
  const std::string body = name.substr(std::string("builtin:").size());
  if (body == "blank") return blank_machine();

  if (body.rfind("program:", 0) == 0) {
    const std::string list = body.substr(std::string("program:").size());
    if (list.empty()) throw UnknownBuiltinError("program needs expressions");
    return program_machine(split(list, ','));
  }
  if (body.rfind("branching:", 0) == 0) {
    const std::string list = body.substr(std::string("branching:").size());
    std::vector<std::pair<double, std::vector<std::string>>> branches;
    for (const std::string& part : split(list, '|')) {
      std::vector<std::string> fields = split(part, ',');
      if (fields.empty()) throw UnknownBuiltinError("empty branch");
      double w = 0.0;
      try {
        w = std::stod(fields.front());
      } catch (const std::exception&) {
        throw UnknownBuiltinError("branch weight '" + fields.front() +
                                  "' is not a number");
      }
      std::vector<std::string> exprs(fields.begin() + 1, fields.end());
      // allow a branch that prints nothing: weight with no expressions
      branches.emplace_back(w, std::move(exprs));
    }
    return branching_machine(branches);
  }
  for (const char* kind : {"random", "phased"}) {
    const std::string prefix = std::string(kind) + ":";
    if (body.rfind(prefix, 0) != 0) continue;
    std::vector<std::string> fields = split(body.substr(prefix.size()), ':');
    std::uint64_t seed = 0;
    int L = 1;
    try {
      seed = std::stoull(fields.at(0));
      if (fields.size() > 1) L = std::stoi(fields.at(1));
    } catch (const std::exception&) {
      throw UnknownBuiltinError("bad " + std::string(kind) + " parameters in '" +
                                body + "'");
    }
    MachineSpec spec;
    if (std::string(kind) == "random") {
      spec.kind = RandomMachine{L, seed, Alphabet::Base};
    } else {
      spec.kind = PhasedMachine{L, seed, Alphabet::Base};
    }
    spec.tag = "builtin:" + body;
    return spec;
  }
  throw UnknownBuiltinError("unknown builtin machine '" + name + "'");
}

Alphabet parse_alphabet(const json& j) {
  if (!j.contains("alphabet")) return Alphabet::Base;
  const std::string a = j.at("alphabet").get<std::string>();
  if (a == "base") return Alphabet::Base;
  if (a == "extended") return Alphabet::Extended;
  throw ParseError("alphabet must be \"base\" or \"extended\", got \"" + a +
                   "\"");
}

ProgramSpec parse_program(const json& j) {
  ProgramSpec p;
  for (const auto& e : j) {
    p.expressions.push_back(Expression(e.get<std::string>()));
  }
  return p;
}

}  // namespace

MachineSpec parse_machine_json(const std::string& text,
                               const std::string& tag) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("machine spec is not valid JSON: ") +
                     e.what());
  }
  try {
    const std::string kind = j.at("kind").get<std::string>();
    MachineSpec spec;
    spec.tag = tag;
    if (kind == "dense") {
      DenseMachine m;
      m.internal_dim = j.value("L", 1);
      m.alphabet = parse_alphabet(j);
      const auto& entries = j.at("entries");
      const int k = symbol_count(m.alphabet);
      const int dim = m.internal_dim * k * k;
      if (static_cast<int>(entries.size()) != dim * dim) {
        std::ostringstream msg;
        msg << "dense machine needs " << dim * dim << " entries (" << k * k
            << "L = " << dim << " squared), got " << entries.size();
        throw ParseError(msg.str());
      }
      m.entries.resize(dim, dim);
      for (int r = 0; r < dim; ++r) {
        for (int c = 0; c < dim; ++c) {
          const auto& pair = entries.at(static_cast<std::size_t>(r * dim + c));
          m.entries(r, c) =
              Complex(pair.at(0).get<double>(), pair.at(1).get<double>());
        }
      }
      spec.kind = std::move(m);
    } else if (kind == "program") {
      ProgramMachine m;
      m.program = parse_program(j.at("programs"));
      m.program.pad_blanks = j.value("pad", 1);
      spec.kind = std::move(m);
    } else if (kind == "branching") {
      BranchingMachine m;
      m.horizon = j.value("horizon", 160);
      for (const auto& b : j.at("programs")) {
        BranchSpec branch;
        branch.weight = b.at("weight").get<double>();
        branch.program = parse_program(b.at("expressions"));
        branch.program.pad_blanks = b.value("pad", 1);
        m.branches.push_back(std::move(branch));
      }
      spec.kind = std::move(m);
    } else if (kind == "random") {
      spec.kind = RandomMachine{j.value("L", 1), j.value("seed", 0ull),
                                parse_alphabet(j)};
    } else if (kind == "phased") {
      spec.kind = PhasedMachine{j.value("L", 1), j.value("seed", 0ull),
                                parse_alphabet(j)};
    } else {
      throw ParseError("unknown machine kind \"" + kind + "\"");
    }
    return spec;
  } catch (const json::exception& e) {
    throw ParseError(std::string("bad machine spec field: ") + e.what());
  }
}

MachineSpec load_machine(const std::string& name_or_path) {
  if (name_or_path.rfind("builtin:", 0) == 0) {
    return parse_builtin(name_or_path);
  }
  std::ifstream in(name_or_path);
  if (!in) {
    throw ParseError("cannot open machine spec file '" + name_or_path + "'");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_machine_json(buf.str(), name_or_path);
}

}  // namespace quenum
