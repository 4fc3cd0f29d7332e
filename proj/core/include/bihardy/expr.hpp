#pragma once

#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "bihardy/errors.hpp"

namespace bihardy::expr {

using ParamBindings = std::map<std::string, double>;

class ParseError : public ValidationError {
public:
    ParseError(std::size_t offset, std::set<std::string> expected, const std::string& what);
    std::size_t offset() const { return offset_; }
    const std::set<std::string>& expected() const { return expected_; }

private:
    std::size_t offset_;
    std::set<std::string> expected_;
};

class UnboundParameter : public ValidationError {
public:
    explicit UnboundParameter(const std::string& name);
    const std::string& name() const { return name_; }

private:
    std::string name_;
};

enum class NodeKind { number, variable, parameter, add, sub, mul, div, pow, neg, call };
enum class Function { exp, log, sqrt, abs, pow };

struct Node {
    NodeKind kind;
    double number = 0.0;
    std::string name;  // parameter name
    Function fn = Function::exp;
    std::vector<std::shared_ptr<const Node>> args;
};

// Flat postfix program with parameters already substituted. Cheap to copy
// and reentrant, used in the quadrature inner loops.
class Compiled {
public:
    double operator()(double x) const;
    std::size_t size() const { return code_.size(); }

private:
    friend class DensityExpr;
    enum class Op : unsigned char { push, var, add, sub, mul, div, pow, neg, exp, log, sqrt, abs };
    struct Instr {
        Op op;
        double value;
    };
    std::vector<Instr> code_;
    std::size_t max_depth_ = 0;
};

class DensityExpr {
public:
    DensityExpr() = default;
    static DensityExpr parse(std::string_view source);

    double evaluate(double x, const ParamBindings& params = {}) const;
    Compiled compile(const ParamBindings& params = {}) const;

    std::set<std::string> parameters() const;
    std::string to_string() const;
    const std::string& source() const { return source_; }
    const Node& root() const { return *root_; }
    bool empty() const { return root_ == nullptr; }

    friend bool structurally_equal(const DensityExpr& a, const DensityExpr& b);

private:
    std::shared_ptr<const Node> root_;
    std::string source_;
};

inline DensityExpr parse(std::string_view source) { return DensityExpr::parse(source); }
inline double evaluate(const DensityExpr& e, double x, const ParamBindings& params = {}) {
    return e.evaluate(x, params);
}

}  // namespace bihardy::expr
