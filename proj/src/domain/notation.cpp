#include "fusesim/domain/notation.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace fusesim {

NotationError::NotationError(size_t position, const std::string& message)
    : ConfigError("at position " + std::to_string(position) + ": " + message), position_(position) {}

namespace {

bool IsNameChar(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.'; }

class NotationParser {
 public:
  NotationParser(std::string_view text, const AppSpec& app, int default_memory_mb)
      : text_(text), app_(app), default_memory_mb_(default_memory_mb) {}

  FusionSetup Parse() {
    FusionSetup setup;
    SkipSpace();
    if (AtEnd()) throw NotationError(pos_, "empty notation");
    while (true) {
      ParseGroup(setup);
      SkipSpace();
      if (AtEnd()) break;
      Expect('-');
    }
    for (const auto& task : app_.tasks) {
      if (!setup.home.contains(task.id)) {
        throw NotationError(text_.size(), "task '" + task.id + "' appears in no group");
      }
    }
    return setup;
  }

 private:
  void ParseGroup(FusionSetup& setup) {
    SkipSpace();
    Expect('(');
    FusionGroup group;
    group.id = "g" + std::to_string(setup.groups.size());
    group.memory_mb = default_memory_mb_;
    SkipSpace();
    if (Peek() == ')') throw NotationError(pos_, "empty group");
    while (true) {
      SkipSpace();
      const size_t start = pos_;
      std::string name = ParseName();
      if (app_.FindTask(name) == nullptr) throw NotationError(start, "unknown task '" + name + "'");
      if (group.Contains(name)) throw NotationError(start, "task '" + name + "' listed twice in a group");
      group.members.push_back(name);
      setup.home.emplace(name, group.id);
      SkipSpace();
      if (Peek() == ',') {
        ++pos_;
        continue;
      }
      Expect(')');
      break;
    }
    SkipSpace();
    if (Peek() == '@') {
      ++pos_;
      SkipSpace();
      const size_t start = pos_;
      int memory = 0;
      while (!AtEnd() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        memory = memory * 10 + (text_[pos_] - '0');
        ++pos_;
        if (memory > 1'000'000) throw NotationError(start, "memory size out of range");
      }
      if (pos_ == start || memory <= 0) throw NotationError(start, "expected a positive memory size");
      group.memory_mb = memory;
    }
    setup.groups.push_back(std::move(group));
  }

  std::string ParseName() {
    const size_t start = pos_;
    while (!AtEnd() && IsNameChar(text_[pos_])) ++pos_;
    if (pos_ == start) throw NotationError(start, "expected a task name");
    return std::string(text_.substr(start, pos_ - start));
  }

  void Expect(char c) {
    if (Peek() != c) {
      const std::string found = AtEnd() ? "end of input" : std::string("'") + text_[pos_] + "'";
      throw NotationError(pos_, std::string("expected '") + c + "', found " + found);
    }
    ++pos_;
  }

  char Peek() const { return AtEnd() ? '\0' : text_[pos_]; }
  bool AtEnd() const { return pos_ >= text_.size(); }
  void SkipSpace() {
    while (!AtEnd() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  std::string_view text_;
  const AppSpec& app_;
  int default_memory_mb_;
  size_t pos_ = 0;
};

struct CanonicalGroup {
  std::vector<std::string> members;
  int memory_mb;

  bool operator<(const CanonicalGroup& other) const {
    if (members != other.members) return members < other.members;
    return memory_mb < other.memory_mb;
  }
};

std::string Format(const FusionSetup& setup, bool with_memory) {
  std::vector<CanonicalGroup> groups;
  groups.reserve(setup.groups.size());
  for (const auto& group : setup.groups) {
    CanonicalGroup canonical{group.members, group.memory_mb};
    std::sort(canonical.members.begin(), canonical.members.end());
    groups.push_back(std::move(canonical));
  }
  std::sort(groups.begin(), groups.end());

  std::string out;
  for (size_t i = 0; i < groups.size(); ++i) {
    if (i > 0) out += '-';
    out += '(';
    for (size_t j = 0; j < groups[i].members.size(); ++j) {
      if (j > 0) out += ',';
      out += groups[i].members[j];
    }
    out += ')';
    if (with_memory) out += '@' + std::to_string(groups[i].memory_mb);
  }
  return out;
}

}  // namespace

FusionSetup ParseSetupNotation(std::string_view text, const AppSpec& app, int default_memory_mb) {
  return NotationParser(text, app, default_memory_mb).Parse();
}

std::string FormatSetup(const FusionSetup& setup) { return Format(setup, false); }

std::string FormatSetupWithMemory(const FusionSetup& setup) { return Format(setup, true); }

}  // namespace fusesim
