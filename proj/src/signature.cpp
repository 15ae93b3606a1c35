#include "termlat/signature.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include "termlat/syntax.hpp"

namespace termlat {

Degree tnorm_and(TNorm tnorm, Degree x, Degree y) {
  return tnorm == TNorm::Min ? std::min(x, y) : x * y;
}

ArgMapping ArgMapping::identity(std::size_t arity) {
  std::vector<std::size_t> images(arity);
  for (std::size_t i = 0; i < arity; ++i) images[i] = i + 1;
  return ArgMapping(std::move(images));
}

bool ArgMapping::is_identity() const {
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (images_[i] != i + 1) return false;
  }
  return true;
}

bool ArgMapping::is_injective() const {
  std::set<std::size_t> seen(images_.begin(), images_.end());
  return seen.size() == images_.size();
}

ArgMapping ArgMapping::inverse() const {
  std::vector<std::size_t> inv(images_.size(), 0);
  for (std::size_t i = 0; i < images_.size(); ++i) inv[images_[i] - 1] = i + 1;
  return ArgMapping(std::move(inv));
}

std::string ArgMapping::str() const {
  std::string out = "[";
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (i > 0) out += ", ";
    out += std::to_string(i + 1) + "->" + std::to_string(images_[i]);
  }
  return out + "]";
}

namespace {

std::string degree_text(Degree d) {
  std::ostringstream os;
  os.precision(6);
  os << d;
  return os.str();
}

}  // namespace

std::string SimilarityEntry::str() const {
  std::string out = "sim " + lo.str() + " " + hi.str() + " : " + degree_text(degree);
  if (lo.arity != hi.arity || !mapping.is_identity()) {
    out += " " + mapping.str();
  }
  return out;
}

SignatureError::SignatureError(const std::string& message, std::size_t line, std::size_t column)
    : std::runtime_error(line == 0 ? message
                                   : "line " + std::to_string(line) + ", column " +
                                         std::to_string(column) + ": " + message),
      line_(line),
      column_(column) {}

void SimilaritySignature::add(SimilarityEntry entry) {
  const std::string what = "entry '" + entry.str() + "': ";
  if (!is_valid_functor_name(entry.lo.name) || !is_valid_functor_name(entry.hi.name)) {
    throw SignatureError(what + "invalid functor name", 0, 0);
  }
  if (!(entry.degree > 0.0 && entry.degree <= 1.0)) {
    throw SignatureError(what + "degree must lie in (0,1]", 0, 0);
  }
  if (entry.lo == entry.hi) {
    throw SignatureError(what + "a symbol is implicitly similar to itself", 0, 0);
  }
  if (entry.lo.arity > entry.hi.arity) {
    throw SignatureError(what + "mapping must go from the lower arity to the higher arity", 0, 0);
  }
  if (entry.mapping.size() != entry.lo.arity) {
    throw SignatureError(what + "mapping must cover every position of " + entry.lo.str(), 0, 0);
  }
  for (std::size_t i = 1; i <= entry.mapping.size(); ++i) {
    const std::size_t j = entry.mapping.image(i);
    if (j < 1 || j > entry.hi.arity) {
      throw SignatureError(what + "position " + std::to_string(j) + " out of range for " +
                               entry.hi.str(),
                           0, 0);
    }
  }
  if (!entry.mapping.is_injective()) {
    throw SignatureError(what + "mapping not injective", 0, 0);
  }
  if (index_.contains({entry.lo, entry.hi})) {
    throw SignatureError(what + "duplicate similarity for " + entry.lo.str() + " and " +
                             entry.hi.str(),
                         0, 0);
  }
  const std::size_t at = entries_.size();
  index_.emplace(std::make_pair(entry.lo, entry.hi), at);
  index_.emplace(std::make_pair(entry.hi, entry.lo), at);
  entries_.push_back(std::move(entry));
}

std::optional<SimilarityMatch> SimilaritySignature::lookup(const Symbol& f,
                                                           const Symbol& g) const {
  if (f == g) return SimilarityMatch{1.0, ArgMapping::identity(f.arity), true};
  auto it = index_.find({f, g});
  if (it == index_.end()) return std::nullopt;
  const SimilarityEntry& e = entries_[it->second];
  if (e.lo == f) return SimilarityMatch{e.degree, e.mapping, true};
  if (f.arity == g.arity) return SimilarityMatch{e.degree, e.mapping.inverse(), true};
  return SimilarityMatch{e.degree, e.mapping, false};
}

bool SimilaritySignature::equal_arity_only() const {
  return std::all_of(entries_.begin(), entries_.end(),
                     [](const SimilarityEntry& e) { return e.lo.arity == e.hi.arity; });
}

bool SimilaritySignature::identity_mappings_only() const {
  return std::all_of(entries_.begin(), entries_.end(), [](const SimilarityEntry& e) {
    return e.lo.arity == e.hi.arity && e.mapping.is_identity();
  });
}

// ---------------------------------------------------------------------------
// File format

namespace {

class LineReader {
 public:
  LineReader(std::string_view line, std::size_t line_no) : line_(line), line_no_(line_no) {}

  [[noreturn]] void fail(const std::string& message) const {
    throw SignatureError(message, line_no_, pos_ + 1);
  }

  void skip_ws() {
    while (pos_ < line_.size() && std::isspace(static_cast<unsigned char>(line_[pos_])) != 0) {
      ++pos_;
    }
  }

  bool at_end() {
    skip_ws();
    return pos_ >= line_.size();
  }

  bool peek(char c) {
    skip_ws();
    return pos_ < line_.size() && line_[pos_] == c;
  }

  void expect(std::string_view token) {
    skip_ws();
    if (line_.substr(pos_, token.size()) != token) {
      fail("expected '" + std::string(token) + "'");
    }
    pos_ += token.size();
  }

  std::string word() {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < line_.size() &&
           (std::isalnum(static_cast<unsigned char>(line_[pos_])) != 0 || line_[pos_] == '_')) {
      ++pos_;
    }
    if (start == pos_) fail("expected a name");
    return std::string(line_.substr(start, pos_ - start));
  }

  std::size_t number() {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < line_.size() && std::isdigit(static_cast<unsigned char>(line_[pos_])) != 0) {
      ++pos_;
    }
    if (start == pos_) fail("expected a non-negative integer");
    if (pos_ - start > 9) {
      pos_ = start;
      fail("integer too large");
    }
    return std::stoul(std::string(line_.substr(start, pos_ - start)));
  }

  Degree degree() {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < line_.size() &&
           (std::isdigit(static_cast<unsigned char>(line_[pos_])) != 0 || line_[pos_] == '.' ||
            line_[pos_] == 'e' || line_[pos_] == 'E' || line_[pos_] == '-' ||
            line_[pos_] == '+')) {
      ++pos_;
    }
    const std::string text(line_.substr(start, pos_ - start));
    char* end = nullptr;
    const double value = std::strtod(text.c_str(), &end);
    if (text.empty() || end != text.c_str() + text.size()) {
      pos_ = start;
      fail("expected a degree");
    }
    return value;
  }

  Symbol symbol() {
    skip_ws();
    const std::size_t start = pos_;
    std::string name = word();
    if (!is_valid_functor_name(name)) {
      pos_ = start;
      fail("invalid functor name '" + name + "'");
    }
    expect("/");
    return Symbol{std::move(name), number()};
  }

  std::size_t line_no() const { return line_no_; }

 private:
  std::string_view line_;
  std::size_t line_no_;
  std::size_t pos_ = 0;
};

SimilarityEntry parse_entry(LineReader& in) {
  SimilarityEntry e;
  e.lo = in.symbol();
  e.hi = in.symbol();
  if (e.lo.arity > e.hi.arity) {
    in.fail("entry '" + e.lo.str() + " " + e.hi.str() +
            "': first symbol must not have higher arity than the second");
  }
  in.expect(":");
  e.degree = in.degree();
  if (in.peek('[')) {
    in.expect("[");
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    if (!in.peek(']')) {
      do {
        const std::size_t from = in.number();
        in.expect("->");
        const std::size_t to = in.number();
        pairs.emplace_back(from, to);
      } while (in.peek(',') && (in.expect(","), true));
    }
    in.expect("]");
    std::vector<std::size_t> images(e.lo.arity, 0);
    for (const auto& [from, to] : pairs) {
      if (from < 1 || from > e.lo.arity) {
        in.fail("entry '" + e.lo.str() + " " + e.hi.str() + "': position " +
                std::to_string(from) + " out of range for " + e.lo.str());
      }
      if (images[from - 1] != 0) {
        in.fail("entry '" + e.lo.str() + " " + e.hi.str() + "': position " +
                std::to_string(from) + " mapped twice");
      }
      images[from - 1] = to;
    }
    if (std::find(images.begin(), images.end(), 0) != images.end()) {
      in.fail("entry '" + e.lo.str() + " " + e.hi.str() + "': mapping must cover every position of " +
              e.lo.str());
    }
    e.mapping = ArgMapping(std::move(images));
  } else if (e.lo.arity == e.hi.arity || e.lo.arity == 0) {
    e.mapping = ArgMapping::identity(e.lo.arity);
  } else {
    in.fail("entry '" + e.lo.str() + " " + e.hi.str() +
            "': a mapping is required when arities differ");
  }
  if (!in.at_end()) in.fail("trailing input");
  return e;
}

}  // namespace

SimilaritySignature load_signature(std::string_view text) {
  SimilaritySignature sig;
  bool seen_entry = false;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);

    LineReader in(line, line_no);
    if (!in.at_end()) {
      const std::string keyword = in.word();
      if (keyword == "tnorm") {
        if (seen_entry) in.fail("tnorm must precede all entries");
        const std::string which = in.word();
        if (which == "min") {
          sig.set_tnorm(TNorm::Min);
        } else if (which == "product") {
          sig.set_tnorm(TNorm::Product);
        } else {
          in.fail("unknown t-norm '" + which + "'");
        }
        if (!in.at_end()) in.fail("trailing input");
      } else if (keyword == "sim") {
        SimilarityEntry e = parse_entry(in);
        try {
          sig.add(std::move(e));
        } catch (const SignatureError& err) {
          throw SignatureError(err.what(), line_no, 1);
        }
        seen_entry = true;
      } else {
        throw SignatureError("unknown directive '" + keyword + "'", line_no, 1);
      }
    }
    if (end == text.size()) break;
    start = end + 1;
  }
  return sig;
}

SimilaritySignature load_signature_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SignatureError("cannot open signature file '" + path + "'", 0, 0);
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return load_signature(buf.str());
  } catch (const SignatureError& err) {
    throw SignatureError(path + ": " + err.what(), err.line(), err.column());
  }
}

std::string print_signature(const SimilaritySignature& sig) {
  std::string out = sig.tnorm() == TNorm::Min ? "tnorm min\n" : "tnorm product\n";
  for (const SimilarityEntry& e : sig.entries()) out += e.str() + "\n";
  return out;
}

// ---------------------------------------------------------------------------
// Similarity on terms

Degree term_similarity(const SimilaritySignature& sig, const Term& t1, const Term& t2,
                       SimilarityMode mode) {
  if (t1.is_var() || t2.is_var()) {
    return (t1.is_var() && t2.is_var() && t1.name() == t2.name()) ? 1.0 : 0.0;
  }
  if (mode == SimilarityMode::EqualArity && t1.arity() != t2.arity()) return 0.0;
  auto match = sig.lookup(t1.symbol(), t2.symbol());
  if (!match) return 0.0;

  const Term& lower = match->first_is_lower ? t1 : t2;
  const Term& higher = match->first_is_lower ? t2 : t1;
  Degree degree = match->degree;
  for (std::size_t i = 1; i <= lower.arity() && degree > 0.0; ++i) {
    const Term& a = lower.arg(i - 1);
    const Term& b = higher.arg(match->mapping.image(i) - 1);
    const Degree sub = match->first_is_lower ? term_similarity(sig, a, b, mode)
                                             : term_similarity(sig, b, a, mode);
    degree = sig.conj(degree, sub);
  }
  return degree;
}

std::vector<TransitivityViolation> transitivity_violations(const SimilaritySignature& sig) {
  std::vector<Symbol> symbols;
  for (const SimilarityEntry& e : sig.entries()) {
    for (const Symbol& s : {e.lo, e.hi}) {
      if (std::find(symbols.begin(), symbols.end(), s) == symbols.end()) symbols.push_back(s);
    }
  }
  auto degree = [&](const Symbol& x, const Symbol& y) {
    auto m = sig.lookup(x, y);
    return m ? m->degree : 0.0;
  };
  std::vector<TransitivityViolation> out;
  for (std::size_t i = 0; i < symbols.size(); ++i) {
    for (std::size_t k = i + 1; k < symbols.size(); ++k) {
      for (std::size_t j = 0; j < symbols.size(); ++j) {
        if (j == i || j == k) continue;
        const Degree ab = degree(symbols[i], symbols[j]);
        const Degree bc = degree(symbols[j], symbols[k]);
        const Degree ac = degree(symbols[i], symbols[k]);
        if (ac < std::min(ab, bc)) {
          out.push_back({symbols[i], symbols[j], symbols[k], ab, bc, ac});
        }
      }
    }
  }
  return out;
}

}  // namespace termlat
