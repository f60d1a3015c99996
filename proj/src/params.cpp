#include "oqs/params.hpp"

#include <cctype>
#include <charconv>
#include <cstring>

namespace oqs {

namespace {

bool fullConsume(const std::string& s, double& out) {
  if (s.empty()) return false;
  const char* b = s.data();
  const char* e = b + s.size();
  auto [p, ec] = std::from_chars(b, e, out);
  return ec == std::errc{} && p == e;
}

std::string trimmed(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

}  // namespace

complex parseComplex(const std::string& text) {
  const std::string s = trimmed(text);
  if (s.empty()) throw UsageError("malformed complex value: '" + text + "'");
  if (s.front() == '(') {
    if (s.back() != ')') throw UsageError("malformed complex value: '" + text + "'");
    const std::string inner = s.substr(1, s.size() - 2);
    const std::size_t comma = inner.find(',');
    if (comma == std::string::npos)
      throw UsageError("malformed complex value: '" + text + "'");
    double re = 0, im = 0;
    if (!fullConsume(trimmed(inner.substr(0, comma)), re) ||
        !fullConsume(trimmed(inner.substr(comma + 1)), im))
      throw UsageError("malformed complex value: '" + text + "'");
    return {re, im};
  }
  double re = 0;
  if (!fullConsume(s, re)) throw UsageError("malformed complex value: '" + text + "'");
  return {re, 0.0};
}

std::string printReal(double v) {
  char buf[40];
  auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  (void)ec;
  return std::string(buf, p);
}

std::string printComplex(complex v) {
  if (v.imag() == 0.0) return printReal(v.real());
  return "(" + printReal(v.real()) + "," + printReal(v.imag()) + ")";
}

bool ValueIO<int>::parse(const std::string& s, int& out) {
  if (s.empty()) return false;
  const char* b = s.data();
  auto [p, ec] = std::from_chars(b, b + s.size(), out);
  return ec == std::errc{} && p == b + s.size();
}

bool ValueIO<unsigned>::parse(const std::string& s, unsigned& out) {
  if (s.empty() || s[0] == '-') return false;
  const char* b = s.data();
  auto [p, ec] = std::from_chars(b, b + s.size(), out);
  return ec == std::errc{} && p == b + s.size();
}

bool ValueIO<double>::parse(const std::string& s, double& out) { return fullConsume(s, out); }

bool ValueIO<complex>::parse(const std::string& s, complex& out) {
  try {
    out = parseComplex(s);
  } catch (const UsageError&) {
    return false;
  }
  return true;
}

bool ValueIO<bool>::parse(const std::string& s, bool& out) {
  if (s == "true" || s == "1") {
    out = true;
    return true;
  }
  if (s == "false" || s == "0") {
    out = false;
    return true;
  }
  return false;
}

void ParameterTable::finishRegistration(std::unique_ptr<EntryBase> e, const std::string& name,
                                        const std::string& description,
                                        const std::string& prefix, bool isBool,
                                        const char* typeName, std::string defaultPrinted) {
  const std::string full = name + prefix;
  if (find(full))
    throw std::invalid_argument("duplicate parameter registration: " + full);
  e->fullName = full;
  e->typeName = typeName;
  e->description = description;
  e->defaultPrinted = std::move(defaultPrinted);
  e->isBool = isBool;
  entries_.push_back(std::move(e));
}

ParameterTable::EntryBase* ParameterTable::find(const std::string& fullName) const {
  for (const auto& e : entries_)
    if (e->fullName == fullName) return e.get();
  return nullptr;
}

bool ParameterTable::isBoolParam(const std::string& fullName) const {
  const EntryBase* e = find(fullName);
  return e && e->isBool;
}

bool ParameterTable::wasSet(const std::string& fullName) const {
  const EntryBase* e = find(fullName);
  return e && e->set;
}

std::string ParameterTable::printedValue(const std::string& fullName) const {
  const EntryBase* e = find(fullName);
  if (!e) throw std::invalid_argument("no such parameter: " + fullName);
  return e->printCurrent();
}

void ParameterTable::printHelp(std::ostream& out) const {
  out << "Parameters (--name value; flags may stand alone):\n";
  for (const auto& e : entries_)
    out << "  --" << e->fullName << "  [" << e->typeName << "]  " << e->description
        << "  (default: " << e->defaultPrinted << ")\n";
}

void ParameterTable::dump(std::ostream& out, const std::string& linePrefix) const {
  for (const auto& e : entries_)
    out << linePrefix << e->fullName << " = " << e->printCurrent() << "\n";
}

bool updateOne(ParameterTable& table, const std::string& name, const std::string* value) {
  ParameterTable::EntryBase* e = table.find(name);
  if (!e) throw UsageError("unknown parameter: --" + name);
  if (e->isBool && !value) {
    e->parseInto("true");
  } else {
    if (!value) throw UsageError("missing value for --" + name);
    if (!e->parseInto(*value))
      throw UsageError("cannot parse value '" + *value + "' for --" + name);
  }
  e->set = true;
  if (e->mirror) *e->mirror = true;
  return e->isBool;
}

UpdateResult update(ParameterTable& table, int argc, const char* const* argv,
                    const std::string& prefixMarker, int firstArg) {
  std::vector<std::string> args;
  for (int i = firstArg; i < argc; ++i) args.emplace_back(argv[i]);
  return update(table, args, prefixMarker);
}

UpdateResult update(ParameterTable& table, const std::vector<std::string>& args,
                    const std::string& prefixMarker) {
  if (prefixMarker.empty()) throw std::invalid_argument("empty prefix marker");
  std::size_t i = 0;
  while (i < args.size()) {
    const std::string& tok = args[i];
    if (tok == prefixMarker + "help") return UpdateResult::help;
    if (tok.rfind(prefixMarker, 0) != 0)
      throw UsageError("unexpected token: '" + tok + "'");
    const std::string name = tok.substr(prefixMarker.size());
    if (name.empty()) throw UsageError("unexpected token: '" + tok + "'");

    // booleans consume an optional value token, everything else a mandatory one
    const std::string* value = nullptr;
    std::string valueStore;
    if (i + 1 < args.size()) {
      valueStore = args[i + 1];
      value = &valueStore;
    }
    if (table.isBoolParam(name)) {
      const bool explicitValue =
          value && (*value == "true" || *value == "false" || *value == "0" || *value == "1");
      updateOne(table, name, explicitValue ? value : nullptr);
      i += explicitValue ? 2 : 1;
    } else {
      updateOne(table, name, value);
      i += 2;
    }
  }
  return UpdateResult::run;
}

void printHelp(const ParameterTable& table, std::ostream& out) { table.printHelp(out); }

}  // namespace oqs
