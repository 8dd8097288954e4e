#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace ggp::xml {

struct XmlError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A deliberately small XML document model: elements, ordered attributes and
/// character data. No namespaces, no CDATA, no processing beyond skipping a
/// leading declaration and comments. Serialization is canonical so that
/// save(load(x)) is a fixed point.
class Element {
 public:
  Element() = default;
  explicit Element(std::string name) : name_(std::move(name)) {}

  const std::string& name() const { return name_; }
  void set_name(std::string n) { name_ = std::move(n); }

  const std::string& text() const { return text_; }
  void set_text(std::string t) { text_ = std::move(t); }

  void set_attr(const std::string& key, std::string value);
  const std::string* attr(const std::string& key) const;
  const std::string& require_attr(const std::string& key) const;
  const std::vector<std::pair<std::string, std::string>>& attrs() const { return attrs_; }

  Element& add_child(std::string name);
  Element& add_text_child(std::string name, std::string text);
  void adopt(Element&& child);
  const std::vector<std::unique_ptr<Element>>& children() const { return children_; }
  std::vector<const Element*> children(const std::string& name) const;
  const Element* child(const std::string& name) const;
  const Element& require_child(const std::string& name) const;

 private:
  std::string name_;
  std::string text_;
  std::vector<std::pair<std::string, std::string>> attrs_;
  std::vector<std::unique_ptr<Element>> children_;
};

Element parse(const std::string& input);
Element parse_file(const std::string& path);

std::string serialize(const Element& root);
void save_file(const Element& root, const std::string& path);

}  // namespace ggp::xml
