#pragma once

#include <charconv>
#include <complex>
#include <cstdlib>
#include <memory>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace oqs {

using complex = std::complex<double>;

// Thrown for malformed command lines and bad parameter values; the drivers
// map it to exit code 2 (runtime failures exit with 1).
class UsageError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

complex parseComplex(const std::string& text);
std::string printComplex(complex v);
std::string printReal(double v);

// i/o traits for the types a ParameterTable can store
template <class T>
struct ValueIO;

template <>
struct ValueIO<int> {
  static const char* typeName() { return "integer"; }
  static std::string print(int v) { return std::to_string(v); }
  static bool parse(const std::string& s, int& out);
};

template <>
struct ValueIO<unsigned> {
  static const char* typeName() { return "unsigned"; }
  static std::string print(unsigned v) { return std::to_string(v); }
  static bool parse(const std::string& s, unsigned& out);
};

template <>
struct ValueIO<double> {
  static const char* typeName() { return "real"; }
  static std::string print(double v) { return printReal(v); }
  static bool parse(const std::string& s, double& out);
};

template <>
struct ValueIO<complex> {
  static const char* typeName() { return "complex"; }
  static std::string print(complex v) { return printComplex(v); }
  static bool parse(const std::string& s, complex& out);
};

template <>
struct ValueIO<std::string> {
  static const char* typeName() { return "text"; }
  static std::string print(const std::string& v) { return v; }
  static bool parse(const std::string& s, std::string& out) {
    out = s;
    return true;
  }
};

template <>
struct ValueIO<bool> {
  static const char* typeName() { return "flag"; }
  static std::string print(bool v) { return v ? "true" : "false"; }
  static bool parse(const std::string& s, bool& out);
};

// Ordered registry of named parameters manipulated from the command line.
// Values either live in the table itself (add by value, returns a reference)
// or in caller-owned records that register their members (add by reference).
class ParameterTable {
  struct EntryBase {
    std::string fullName;     // name + prefix, what appears after "--"
    std::string typeName;
    std::string description;
    std::string defaultPrinted;
    bool isBool = false;
    bool set = false;          // explicitly given on the command line
    bool* mirror = nullptr;    // optional presence flag in a Pars record
    virtual ~EntryBase() = default;
    virtual bool parseInto(const std::string& text) = 0;
    virtual std::string printCurrent() const = 0;
  };

  template <class T>
  struct BoundEntry final : EntryBase {
    T* target;
    bool parseInto(const std::string& text) override { return ValueIO<T>::parse(text, *target); }
    std::string printCurrent() const override { return ValueIO<T>::print(*target); }
  };

  template <class T>
  struct OwnedEntry final : EntryBase {
    T value;
    explicit OwnedEntry(T v) : value(std::move(v)) {}
    bool parseInto(const std::string& text) override { return ValueIO<T>::parse(text, value); }
    std::string printCurrent() const override { return ValueIO<T>::print(value); }
  };

public:
  // Registers a parameter. Passing an lvalue binds that variable (its current
  // content is the default); passing an rvalue stores the value in the table.
  // Either way the returned reference tracks command-line updates.
  template <class T>
  std::remove_cvref_t<T>& add(const std::string& name, const std::string& description,
                              T&& value, const std::string& prefix = "") {
    using V = std::remove_cvref_t<T>;
    static_assert(!std::is_const_v<std::remove_reference_t<T>>,
                  "cannot register a const parameter target");
    if constexpr (std::is_lvalue_reference_v<T>) {
      auto e = std::make_unique<BoundEntry<V>>();
      e->target = &value;
      finishRegistration(std::move(e), name, description, prefix,
                         std::is_same_v<V, bool>, ValueIO<V>::typeName(),
                         ValueIO<V>::print(value));
      return value;
    } else {
      auto e = std::make_unique<OwnedEntry<V>>(std::move(value));
      V& ref = e->value;
      finishRegistration(std::move(e), name, description, prefix,
                         std::is_same_v<V, bool>, ValueIO<V>::typeName(),
                         ValueIO<V>::print(ref));
      return ref;
    }
  }

  // like add(lvalue) but also raises `givenFlag` when set explicitly
  template <class T>
  T& addWithFlag(const std::string& name, const std::string& description, T& target,
                 bool& givenFlag, const std::string& prefix = "") {
    add(name, description, target, prefix);
    entries_.back()->mirror = &givenFlag;
    return target;
  }

  bool has(const std::string& fullName) const { return find(fullName) != nullptr; }
  bool isBoolParam(const std::string& fullName) const;
  bool wasSet(const std::string& fullName) const;
  std::string printedValue(const std::string& fullName) const;

  std::size_t size() const { return entries_.size(); }

  void printHelp(std::ostream& out) const;
  // one "name = value" line per parameter, each prefixed by linePrefix
  void dump(std::ostream& out, const std::string& linePrefix) const;

  friend bool updateOne(ParameterTable&, const std::string& name, const std::string* value);

private:
  void finishRegistration(std::unique_ptr<EntryBase> e, const std::string& name,
                          const std::string& description, const std::string& prefix,
                          bool isBool, const char* typeName, std::string defaultPrinted);
  EntryBase* find(const std::string& fullName) const;

  std::vector<std::unique_ptr<EntryBase>> entries_;
};

enum class UpdateResult { run, help };

// Parses "--name value" pairs (flags may stand alone); "--help" short-circuits.
// firstArg tells where the parameter tokens start within argv.
UpdateResult update(ParameterTable& table, int argc, const char* const* argv,
                    const std::string& prefixMarker = "--", int firstArg = 1);

UpdateResult update(ParameterTable& table, const std::vector<std::string>& args,
                    const std::string& prefixMarker = "--");

void printHelp(const ParameterTable& table, std::ostream& out);

}  // namespace oqs
