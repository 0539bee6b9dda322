#pragma once

// Error-tolerant markup parser. Total on text input: anything that fails to
// parse as structure is preserved as text or an opaque node, never rejected.
// This is a deliberately small HTML5-shaped subset: enough for the pages the
// forge emits plus recovery behavior for foreign input.

#include <array>
#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include "lurebench/dom/node.hpp"

namespace lurebench::dom {

namespace detail {

inline bool is_void_element(std::string_view tag) {
  static constexpr std::array<std::string_view, 14> kVoid = {
      "area", "base", "br", "col", "embed", "hr", "img", "input",
      "link", "meta", "param", "source", "track", "wbr"};
  for (auto v : kVoid)
    if (tag == v)
      return true;
  return false;
}

inline bool is_raw_text_element(std::string_view tag) {
  return tag == "script" || tag == "style";
}

inline std::string to_lower(std::string_view s) {
  std::string out(s);
  for (char& c : out)
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

class Parser {
 public:
  explicit Parser(std::string_view input) : in_(input) {}

  Node run() {
    Node doc = document({});
    stack_.push_back(&doc);
    while (pos_ < in_.size())
      step();
    return doc;
  }

 private:
  void step() {
    std::size_t lt = in_.find('<', pos_);
    if (lt == std::string_view::npos) {
      emit_text(in_.substr(pos_));
      pos_ = in_.size();
      return;
    }
    if (lt > pos_)
      emit_text(in_.substr(pos_, lt - pos_));
    pos_ = lt;

    if (starts_with("<!--")) {
      parse_comment();
    } else if (starts_with("<!") || starts_with("<?")) {
      parse_opaque();
    } else if (starts_with("</")) {
      parse_close_tag();
    } else if (pos_ + 1 < in_.size() && std::isalpha(static_cast<unsigned char>(in_[pos_ + 1]))) {
      parse_open_tag();
    } else {
      // A lone '<' that opens nothing is literal text.
      emit_text(in_.substr(pos_, 1));
      ++pos_;
    }
  }

  bool starts_with(std::string_view prefix) const {
    return in_.substr(pos_, prefix.size()) == prefix;
  }

  void emit_text(std::string_view raw) {
    if (raw.empty())
      return;
    Node n;
    n.kind = NodeKind::Text;
    n.text = std::string(raw);
    stack_.back()->children.push_back(std::move(n));
  }

  void parse_comment() {
    std::size_t end = in_.find("-->", pos_ + 4);
    Node n;
    n.kind = NodeKind::Comment;
    if (end == std::string_view::npos) {
      n.text = std::string(in_.substr(pos_ + 4));
      pos_ = in_.size();
    } else {
      n.text = std::string(in_.substr(pos_ + 4, end - pos_ - 4));
      pos_ = end + 3;
    }
    stack_.back()->children.push_back(std::move(n));
  }

  void parse_opaque() {
    std::size_t end = in_.find('>', pos_);
    Node n;
    n.kind = NodeKind::Opaque;
    if (end == std::string_view::npos) {
      n.text = std::string(in_.substr(pos_ + 1));
      pos_ = in_.size();
    } else {
      n.text = std::string(in_.substr(pos_ + 1, end - pos_ - 1));
      pos_ = end + 1;
    }
    stack_.back()->children.push_back(std::move(n));
  }

  void parse_close_tag() {
    std::size_t end = in_.find('>', pos_);
    std::string_view body =
        end == std::string_view::npos ? in_.substr(pos_ + 2) : in_.substr(pos_ + 2, end - pos_ - 2);
    pos_ = end == std::string_view::npos ? in_.size() : end + 1;
    std::string tag = to_lower(trim(body));
    // Pop to the nearest matching open element; a stray close tag is ignored.
    for (std::size_t i = stack_.size(); i-- > 1;) {
      if (stack_[i]->is_element(tag)) {
        stack_.resize(i);
        return;
      }
    }
  }

  void parse_open_tag() {
    std::size_t i = pos_ + 1;
    std::size_t name_start = i;
    while (i < in_.size() && (std::isalnum(static_cast<unsigned char>(in_[i])) || in_[i] == '-'))
      ++i;
    Node n;
    n.kind = NodeKind::Element;
    n.tag = to_lower(in_.substr(name_start, i - name_start));

    bool self_closing = false;
    while (i < in_.size() && in_[i] != '>') {
      if (std::isspace(static_cast<unsigned char>(in_[i]))) {
        ++i;
        continue;
      }
      if (in_[i] == '/') {
        self_closing = true;
        ++i;
        continue;
      }
      std::size_t attr_start = i;
      while (i < in_.size() && !std::isspace(static_cast<unsigned char>(in_[i])) && in_[i] != '=' &&
             in_[i] != '>' && in_[i] != '/')
        ++i;
      std::string name = to_lower(in_.substr(attr_start, i - attr_start));
      std::string value;
      while (i < in_.size() && std::isspace(static_cast<unsigned char>(in_[i])))
        ++i;
      if (i < in_.size() && in_[i] == '=') {
        ++i;
        while (i < in_.size() && std::isspace(static_cast<unsigned char>(in_[i])))
          ++i;
        if (i < in_.size() && (in_[i] == '"' || in_[i] == '\'')) {
          char quote = in_[i++];
          std::size_t value_start = i;
          while (i < in_.size() && in_[i] != quote)
            ++i;
          value = std::string(in_.substr(value_start, i - value_start));
          if (i < in_.size())
            ++i;
        } else {
          std::size_t value_start = i;
          while (i < in_.size() && !std::isspace(static_cast<unsigned char>(in_[i])) && in_[i] != '>')
            ++i;
          value = std::string(in_.substr(value_start, i - value_start));
        }
      }
      if (!name.empty())
        n.attrs.emplace_back(std::move(name), std::move(value));
    }
    if (i < in_.size())
      ++i;  // consume '>'
    pos_ = i;

    if (is_raw_text_element(n.tag) && !self_closing) {
      // Raw text runs to the matching close tag, entities and '<' untouched.
      std::string close = "</" + n.tag;
      std::size_t end = find_case_insensitive(close);
      std::string raw = std::string(end == std::string_view::npos ? in_.substr(pos_)
                                                                  : in_.substr(pos_, end - pos_));
      if (!raw.empty()) {
        Node t;
        t.kind = NodeKind::Text;
        t.text = std::move(raw);
        n.children.push_back(std::move(t));
      }
      if (end == std::string_view::npos) {
        pos_ = in_.size();
      } else {
        std::size_t gt = in_.find('>', end);
        pos_ = gt == std::string_view::npos ? in_.size() : gt + 1;
      }
      stack_.back()->children.push_back(std::move(n));
      return;
    }

    bool void_elem = is_void_element(n.tag) || self_closing;
    stack_.back()->children.push_back(std::move(n));
    if (!void_elem)
      stack_.push_back(&stack_.back()->children.back());
  }

  std::size_t find_case_insensitive(std::string_view needle) const {
    if (needle.empty() || pos_ >= in_.size())
      return std::string_view::npos;
    for (std::size_t i = pos_; i + needle.size() <= in_.size(); ++i) {
      bool match = true;
      for (std::size_t j = 0; j < needle.size(); ++j) {
        if (std::tolower(static_cast<unsigned char>(in_[i + j])) !=
            std::tolower(static_cast<unsigned char>(needle[j]))) {
          match = false;
          break;
        }
      }
      if (match)
        return i;
    }
    return std::string_view::npos;
  }

  static std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
      s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
      s.remove_suffix(1);
    return s;
  }

  std::string_view in_;
  std::size_t pos_ = 0;
  std::vector<Node*> stack_;
};

}  // namespace detail

// Never throws on text input; malformed structure degrades to recovery.
inline Node parse(std::string_view markup) {
  return detail::Parser(markup).run();
}

}  // namespace lurebench::dom
