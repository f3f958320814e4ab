#include <cctype>
#include <charconv>

#include "profin/errors.hpp"
#include "profin/mekler.hpp"

namespace profin {

namespace {

class LiteralParser {
 public:
  explicit LiteralParser(std::string_view text) : text_(text) {}

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool at_end() {
    skip_space();
    return pos_ == text_.size();
  }
  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }
  long long integer() {
    skip_space();
    const char* begin = text_.data() + pos_;
    const char* end = text_.data() + text_.size();
    long long value = 0;
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr == begin) fail("expected integer");
    pos_ += static_cast<std::size_t>(ptr - begin);
    return value;
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("element literal '" + std::string(text_) + "' at column " + std::to_string(pos_) + ": " +
                     what);
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

int checked_vertex(LiteralParser& in, long long v, const Graph& g) {
  if (v < 0 || v >= g.n_vertices()) in.fail("generator index " + std::to_string(v) + " out of range");
  return static_cast<int>(v);
}

}  // namespace

GroupElement parse_element(std::string_view text, GraphPtr graph, Prime p) {
  LiteralParser in(text);
  GroupElement result = identity(graph, p);
  if (in.at_end()) in.fail("empty literal");
  do {
    GroupElement term = identity(graph, p);
    if (in.accept('1')) {
      // identity term
    } else if (in.accept('x')) {
      term = generator(graph, p, checked_vertex(in, in.integer(), *graph));
    } else if (in.accept('z')) {
      in.expect('(');
      const int r = checked_vertex(in, in.integer(), *graph);
      in.expect(',');
      const int s = checked_vertex(in, in.integer(), *graph);
      in.expect(')');
      if (r == s) in.fail("z(r,s) needs r != s");
      term = commutator(generator(graph, p, r), generator(graph, p, s));
    } else {
      in.fail("expected '1', 'x' or 'z'");
    }
    if (in.accept('^')) term = power(term, in.integer());
    result = multiply(result, term);
  } while (in.accept('*'));
  if (!in.at_end()) in.fail("trailing input");
  return result;
}

std::string format_element(const GroupElement& a) {
  if (a.is_identity()) return "1";
  std::string out;
  auto append = [&](const std::string& base, int e) {
    if (!out.empty()) out += '*';
    out += base;
    if (e != 1) out += "^" + std::to_string(e);
  };
  for (auto [key, e] : a.central()) {
    append("z(" + std::to_string(key.first) + "," + std::to_string(key.second) + ")", e);
  }
  for (auto [i, e] : a.vector()) append("x" + std::to_string(i), e);
  return out;
}

}  // namespace profin
