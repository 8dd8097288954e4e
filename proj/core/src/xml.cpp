#include "ggp/xml.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace ggp::xml {

void Element::set_attr(const std::string& key, std::string value) {
  for (auto& [k, v] : attrs_) {
    if (k == key) {
      v = std::move(value);
      return;
    }
  }
  attrs_.emplace_back(key, std::move(value));
}

const std::string* Element::attr(const std::string& key) const {
  for (const auto& [k, v] : attrs_) {
    if (k == key) return &v;
  }
  return nullptr;
}

const std::string& Element::require_attr(const std::string& key) const {
  const std::string* v = attr(key);
  if (!v) throw XmlError("element <" + name_ + "> missing attribute '" + key + "'");
  return *v;
}

Element& Element::add_child(std::string name) {
  children_.push_back(std::make_unique<Element>(std::move(name)));
  return *children_.back();
}

Element& Element::add_text_child(std::string name, std::string text) {
  Element& e = add_child(std::move(name));
  e.set_text(std::move(text));
  return e;
}

void Element::adopt(Element&& child) {
  children_.push_back(std::make_unique<Element>(std::move(child)));
}

std::vector<const Element*> Element::children(const std::string& name) const {
  std::vector<const Element*> out;
  for (const auto& c : children_) {
    if (c->name() == name) out.push_back(c.get());
  }
  return out;
}

const Element* Element::child(const std::string& name) const {
  for (const auto& c : children_) {
    if (c->name() == name) return c.get();
  }
  return nullptr;
}

const Element& Element::require_child(const std::string& name) const {
  const Element* c = child(name);
  if (!c) throw XmlError("element <" + name_ + "> missing child <" + name + ">");
  return *c;
}

namespace {

class Parser {
 public:
  explicit Parser(const std::string& in) : in_(in) {}

  Element run() {
    skip_prolog();
    Element root = parse_element();
    skip_misc();
    if (pos_ != in_.size()) fail("trailing content after document element");
    return root;
  }

 private:
  const std::string& in_;
  size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& msg) const {
    throw XmlError("xml parse error at offset " + std::to_string(pos_) + ": " + msg);
  }

  bool eof() const { return pos_ >= in_.size(); }
  char peek() const { return in_[pos_]; }

  void skip_ws() {
    while (!eof() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }

  void skip_comment() {
    // assumes "<!--" at pos_
    size_t end = in_.find("-->", pos_ + 4);
    if (end == std::string::npos) fail("unterminated comment");
    pos_ = end + 3;
  }

  void skip_misc() {
    for (;;) {
      skip_ws();
      if (!eof() && in_.compare(pos_, 4, "<!--") == 0) {
        skip_comment();
      } else {
        return;
      }
    }
  }

  void skip_prolog() {
    skip_ws();
    if (!eof() && in_.compare(pos_, 5, "<?xml") == 0) {
      size_t end = in_.find("?>", pos_);
      if (end == std::string::npos) fail("unterminated xml declaration");
      pos_ = end + 2;
    }
    skip_misc();
  }

  std::string parse_name() {
    size_t start = pos_;
    while (!eof()) {
      char c = peek();
      if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.') {
        ++pos_;
      } else {
        break;
      }
    }
    if (pos_ == start) fail("expected a name");
    return in_.substr(start, pos_ - start);
  }

  std::string decode_entities(const std::string& raw) {
    std::string out;
    out.reserve(raw.size());
    for (size_t i = 0; i < raw.size(); ++i) {
      if (raw[i] != '&') {
        out.push_back(raw[i]);
        continue;
      }
      size_t semi = raw.find(';', i);
      if (semi == std::string::npos) throw XmlError("unterminated entity reference");
      std::string ent = raw.substr(i + 1, semi - i - 1);
      if (ent == "amp") out.push_back('&');
      else if (ent == "lt") out.push_back('<');
      else if (ent == "gt") out.push_back('>');
      else if (ent == "quot") out.push_back('"');
      else if (ent == "apos") out.push_back('\'');
      else throw XmlError("unknown entity &" + ent + ";");
      i = semi;
    }
    return out;
  }

  Element parse_element() {
    if (eof() || peek() != '<') fail("expected '<'");
    ++pos_;
    Element e(parse_name());
    for (;;) {
      skip_ws();
      if (eof()) fail("unterminated start tag");
      if (peek() == '/') {
        ++pos_;
        if (eof() || peek() != '>') fail("malformed empty-element tag");
        ++pos_;
        return e;
      }
      if (peek() == '>') {
        ++pos_;
        break;
      }
      std::string key = parse_name();
      skip_ws();
      if (eof() || peek() != '=') fail("expected '=' in attribute");
      ++pos_;
      skip_ws();
      if (eof() || (peek() != '"' && peek() != '\'')) fail("expected quoted attribute value");
      char quote = peek();
      ++pos_;
      size_t end = in_.find(quote, pos_);
      if (end == std::string::npos) fail("unterminated attribute value");
      e.set_attr(key, decode_entities(in_.substr(pos_, end - pos_)));
      pos_ = end + 1;
    }
    // content
    std::string text;
    for (;;) {
      if (eof()) fail("unterminated element <" + e.name() + ">");
      if (peek() == '<') {
        if (in_.compare(pos_, 4, "<!--") == 0) {
          skip_comment();
          continue;
        }
        if (pos_ + 1 < in_.size() && in_[pos_ + 1] == '/') {
          pos_ += 2;
          std::string closing = parse_name();
          if (closing != e.name())
            fail("mismatched closing tag </" + closing + "> for <" + e.name() + ">");
          skip_ws();
          if (eof() || peek() != '>') fail("malformed closing tag");
          ++pos_;
          break;
        }
        e.adopt(parse_element());
        continue;
      }
      text.push_back(peek());
      ++pos_;
    }
    // canonical text: surrounding whitespace trimmed
    size_t b = text.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) {
      e.set_text("");
    } else {
      size_t t = text.find_last_not_of(" \t\r\n");
      e.set_text(decode_entities(text.substr(b, t - b + 1)));
    }
    return e;
  }
};

void escape_into(std::string& out, const std::string& s, bool attr) {
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"':
        if (attr) {
          out += "&quot;";
        } else {
          out.push_back(c);
        }
        break;
      default: out.push_back(c);
    }
  }
}

void serialize_into(std::string& out, const Element& e, int depth) {
  out.append(static_cast<size_t>(depth) * 2, ' ');
  out.push_back('<');
  out += e.name();
  for (const auto& [k, v] : e.attrs()) {
    out.push_back(' ');
    out += k;
    out += "=\"";
    escape_into(out, v, true);
    out.push_back('"');
  }
  if (e.children().empty() && e.text().empty()) {
    out += "/>\n";
    return;
  }
  out.push_back('>');
  if (e.children().empty()) {
    escape_into(out, e.text(), false);
    out += "</";
    out += e.name();
    out += ">\n";
    return;
  }
  out.push_back('\n');
  if (!e.text().empty()) {
    out.append(static_cast<size_t>(depth + 1) * 2, ' ');
    escape_into(out, e.text(), false);
    out.push_back('\n');
  }
  for (const auto& c : e.children()) {
    serialize_into(out, *c, depth + 1);
  }
  out.append(static_cast<size_t>(depth) * 2, ' ');
  out += "</";
  out += e.name();
  out += ">\n";
}

}  // namespace

Element parse(const std::string& input) {
  Parser p(input);
  return p.run();
}

Element parse_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw XmlError("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

std::string serialize(const Element& root) {
  std::string out;
  serialize_into(out, root, 0);
  return out;
}

void save_file(const Element& root, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw XmlError("cannot write file: " + path);
  out << serialize(root);
}

}  // namespace ggp::xml
