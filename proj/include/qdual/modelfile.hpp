#pragma once

#include <memory>
#include <string>
#include <vector>

#include "qdual/model.hpp"

namespace qdual {

/// Expression tree of the model-file grammar.
struct ExprNode {
  enum class Kind { Number, Ident, Add, Sub, Mul, Div, Neg, Pow, Func, Tensor };
  Kind kind = Kind::Number;
  Rational value;
  std::string name;  // identifier or function name
  std::vector<std::shared_ptr<const ExprNode>> args;
  int line = 0;
  int column = 0;
};
using Expr = std::shared_ptr<const ExprNode>;

/// Parses a single expression; errors carry the given line.
Expr parse_expression(const std::string& text, int line = 1);

/// Result of evaluating an expression: a plain element or a sum of simple tensors.
struct ExprValue {
  bool is_tensor = false;
  NCPoly poly;
  std::vector<SimpleTensor> tensor;
};

/// Evaluates over the given generators and parameters. Words longer than the
/// generator set's working cutoff are dropped; coefficients follow the space.
ExprValue evaluate(const Expr& e, const GeneratorSet& gens, const ParamSpace* space);

struct RelationText {
  std::string left, right;
  Expr value;
  int line = 0;
};
struct AssignmentText {
  std::string target;
  Expr value;
  int line = 0;
};
struct MatrixText {
  std::string target;
  std::vector<std::vector<Expr>> rows;
  int line = 0;
};
struct RepresentationText {
  std::string name;
  bool on_group = false;
  std::vector<MatrixText> matrices;
};
struct SideText {
  std::vector<RelationText> relations;
  std::vector<AssignmentText> coproducts;
  std::vector<AssignmentText> counit;
};

/// Parsed, not yet evaluated, model document.
struct ModelText {
  std::string name;
  PresentationKind kind = PresentationKind::Algebra;
  std::vector<std::string> params;
  std::vector<std::string> generators;
  std::vector<std::string> coordinates;
  std::vector<std::string> notes;
  SideText algebra;
  SideText group;
  bool has_group = false;
  std::vector<RepresentationText> representations;
  std::vector<ContractionMap> contractions;
};

/// Throws ParseError with line and column on malformed input.
ModelText parse_model_text(const std::string& text);
/// Evaluates and validates; throws ConfigError on semantic problems.
Model instantiate(const ModelText& text, const Truncation& t);
Model load_model_file(const std::string& path, const Truncation& t);

/// Serializes a model with every structure written as a truncated polynomial.
std::string write_model(const Model& m);

/// Coefficient printing in the model-file grammar.
std::string series_expression(const ScalarSeries& s);

}  // namespace qdual
