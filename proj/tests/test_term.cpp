#include <gtest/gtest.h>

#include <sstream>

#include "termlat/syntax.hpp"
#include "termlat/term.hpp"

namespace termlat {
namespace {

Term T(std::string_view s) { return parse_term(s); }

TEST(Term, ConstantHasNoArguments) {
  const Term a = T("a");
  EXPECT_TRUE(a.is_constant());
  EXPECT_EQ(a.symbol(), (Symbol{"a", 0}));
  EXPECT_EQ(a.depth(), 1u);
  EXPECT_EQ(a.size(), 1u);
  EXPECT_TRUE(a.is_ground());
}

TEST(Term, NestedApplication) {
  const Term t = T("f(X, g(a))");
  ASSERT_TRUE(t.is_app());
  EXPECT_EQ(t.symbol(), (Symbol{"f", 2}));
  EXPECT_TRUE(t.arg(0).is_var());
  EXPECT_EQ(t.arg(0).name(), "X");
  EXPECT_EQ(t.arg(1).symbol(), (Symbol{"g", 1}));
  EXPECT_EQ(t.arg(1).arg(0).symbol(), (Symbol{"a", 0}));
  EXPECT_EQ(t.depth(), 3u);
  EXPECT_EQ(t.size(), 4u);
  EXPECT_FALSE(t.is_ground());
}

TEST(Term, StructuralEquality) {
  EXPECT_EQ(T("f(X,a)"), Term::app("f", {Term::var("X"), Term::app("a")}));
  EXPECT_NE(T("f(X,a)"), T("f(Y,a)"));
  // Same name, different arity: different symbols.
  EXPECT_NE(T("f(a)"), T("f(a,a)"));
  EXPECT_NE(T("a"), T("A"));
}

TEST(Term, OrderingIsTotal) {
  EXPECT_LT(T("X"), T("a"));
  EXPECT_LT(T("a"), T("b"));
  EXPECT_LT(T("f(a)"), T("f(b)"));
  EXPECT_EQ(T("g(X)") <=> T("g(X)"), std::strong_ordering::equal);
}

TEST(Term, VarsOfFirstOccurrenceOrder) {
  EXPECT_EQ(vars_of(T("f(X, g(Y, X))")), (std::vector<Variable>{{"X"}, {"Y"}}));
  EXPECT_TRUE(vars_of(T("a")).empty());
  EXPECT_EQ(vars_of(T("X")), (std::vector<Variable>{{"X"}}));
}

TEST(Term, OccursIn) {
  EXPECT_TRUE(occurs_in(Variable{"X"}, T("f(g(X))")));
  EXPECT_FALSE(occurs_in(Variable{"Y"}, T("f(g(X))")));
}

TEST(Term, SymbolsOf) {
  const auto syms = symbols_of(T("f(a, g(b, a), X)"));
  EXPECT_EQ(syms.size(), 4u);
}

TEST(Syntax, PrintExamples) {
  EXPECT_EQ(print_term(Term::app("f", {Term::var("X"), Term::app("a")})), "f(X,a)");
  EXPECT_EQ(print_term(Term::app("a")), "a");
  EXPECT_EQ(print_term(Term::var("_G0")), "_G0");
}

TEST(Syntax, StreamsLikePrint) {
  std::ostringstream os;
  os << T("h( X , g(Y,b) )");
  EXPECT_EQ(os.str(), "h(X,g(Y,b))");
}

TEST(Syntax, UnbalancedParenthesisOffset) {
  try {
    parse_term("f(");
    FAIL() << "expected SyntaxError";
  } catch (const SyntaxError& e) {
    EXPECT_EQ(e.offset(), 2u);
    EXPECT_EQ(e.line(), 1u);
    EXPECT_EQ(e.column(), 3u);
  }
}

TEST(Syntax, LineAndColumnOnLaterLine) {
  try {
    parse_term("f(a,\n  ,b)");
    FAIL() << "expected SyntaxError";
  } catch (const SyntaxError& e) {
    EXPECT_EQ(e.line(), 2u);
    EXPECT_EQ(e.column(), 3u);
  }
}

TEST(Syntax, RejectsMalformedInput) {
  for (const char* bad : {"", "f(a", "f(a,)", "f()", "f(a))", "(a)", "f a", "F(a)", "f(,a)"}) {
    EXPECT_THROW(parse_term(bad), SyntaxError) << bad;
  }
}

TEST(Syntax, NamesAndVariables) {
  EXPECT_TRUE(T("_").is_var());
  EXPECT_TRUE(T("_x1").is_var());
  EXPECT_TRUE(T("smallGift_box2").is_constant());
  EXPECT_TRUE(T("42").is_constant());
}

TEST(Syntax, FreshNamesReservedOnRequest) {
  ParseOptions po;
  po.reserve_fresh_names = true;
  EXPECT_THROW(parse_term("f(_G0)", po), SyntaxError);
  EXPECT_NO_THROW(parse_term("f(_Gx)", po));
  EXPECT_NO_THROW(parse_term("f(_G0)"));
  EXPECT_TRUE(is_fresh_name("_G12"));
  EXPECT_FALSE(is_fresh_name("_G"));
  EXPECT_FALSE(is_fresh_name("G1"));
}

TEST(Syntax, StrictArityAcrossOneProblem) {
  ArityTable table;
  ParseOptions po;
  po.strict_arity = &table;
  EXPECT_NO_THROW(parse_term("f(a, g(b))", po));
  EXPECT_THROW(parse_term("f(a)", po), SyntaxError);
  EXPECT_THROW(parse_term("g(a, b)", po), SyntaxError);
  // Without the table, mixed arities are fine.
  EXPECT_NO_THROW(parse_term("f(f(a), a)"));
}

TEST(Syntax, NameValidators) {
  EXPECT_TRUE(is_valid_functor_name("chocolate"));
  EXPECT_FALSE(is_valid_functor_name("Chocolate"));
  EXPECT_FALSE(is_valid_functor_name(""));
  EXPECT_TRUE(is_valid_variable_name("X1"));
  EXPECT_FALSE(is_valid_variable_name("x1"));
}

}  // namespace
}  // namespace termlat
