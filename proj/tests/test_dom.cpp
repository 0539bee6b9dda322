#include <catch2/catch_amalgamated.hpp>

#include "lurebench/dom/dom.hpp"
#include "oracles.hpp"

using namespace lurebench;
using dom::Node;
using dom::NodeKind;

TEST_CASE("parse recovers a simple tree") {
  Node root = dom::parse("<html><body><p class=\"x\">hello</p></body></html>");
  const Node* p = dom::first_by_tag(root, "p");
  REQUIRE(p != nullptr);
  CHECK(p->attr("class").value() == "x");
  REQUIRE(p->children.size() == 1);
  CHECK(p->children[0].kind == NodeKind::Text);
  CHECK(p->children[0].text == "hello");
}

TEST_CASE("parse never rejects malformed markup") {
  // Stray close tags are dropped; unclosed elements close at EOF.
  Node root = dom::parse("</div><p>a<div><span>b</p >trail");
  CHECK(dom::first_by_tag(root, "p") != nullptr);
  CHECK(dom::first_by_tag(root, "span") != nullptr);
  Node empty = dom::parse("");
  CHECK(empty.children.empty());
  Node junk = dom::parse("<<<>>><!");
  (void)junk;  // total parse: must not throw
}

TEST_CASE("void and raw-text elements") {
  Node root = dom::parse("<body><img src=\"a.png\"><br><script>if (a < b) { x(); }</script></body>");
  CHECK(dom::first_by_tag(root, "img") != nullptr);
  const Node* script = dom::first_by_tag(root, "script");
  REQUIRE(script != nullptr);
  REQUIRE(script->children.size() == 1);
  CHECK(script->children[0].text == "if (a < b) { x(); }");
  // "<b" inside script did not open an element.
  CHECK(dom::first_by_tag(root, "b") == nullptr);
}

TEST_CASE("comments and doctype survive as nodes") {
  Node root = dom::parse("<!doctype html><!-- note --><html></html>");
  REQUIRE(root.children.size() >= 2);
  CHECK(root.children[0].kind == NodeKind::Opaque);
  CHECK(root.children[1].kind == NodeKind::Comment);
}

TEST_CASE("serialize then reparse is a fixed point") {
  const char* samples[] = {
      "<html><head><title>t</title></head><body><p>x</p></body></html>",
      "<body><img src=a.png alt='it&#39;s'><p data-x=\"1\">a &amp; b</p></body>",
      "<div><span style=\"color: red\">s</span><!-- c --><br></div>",
      "<body><script>var q = \"<div>\";</script>no close",
      "<p attr='has \"double\" quotes'>mixed</p>",
  };
  for (const char* s : samples) {
    std::string once = dom::serialize(dom::parse(s));
    std::string twice = dom::serialize(dom::parse(once));
    CHECK(once == twice);
  }
}

TEST_CASE("attribute values keep raw entity text") {
  Node root = dom::parse("<a href=\"/x?a=1&amp;b=2\" title=\"&#72;i\">link</a>");
  const Node* a = dom::first_by_tag(root, "a");
  REQUIRE(a != nullptr);
  CHECK(*a->attr_raw("href") == "/x?a=1&amp;b=2");
  CHECK(a->attr("href").value() == "/x?a=1&b=2");
  CHECK(a->attr("title").value() == "Hi");
}

TEST_CASE("builders escape and locators resolve") {
  Node doc = dom::document({dom::element(
      "html", {},
      {dom::element("body", {},
                    {dom::element("div", {{"id", "a"}}, {dom::text("1 < 2 & 3")}),
                     dom::element("div", {}, {dom::element("iframe", {{"src", "x.html"}}, {})})})})});
  std::string html = dom::serialize(doc);
  CHECK(html.find("1 &lt; 2 &amp; 3") != std::string::npos);

  const Node* iframe = dom::first_by_tag(doc, "iframe");
  REQUIRE(iframe != nullptr);
  std::string loc = dom::locator_of(doc, *iframe);
  CHECK(loc == "/html/body/div[2]/iframe[1]");
  CHECK(dom::resolve_locator(doc, loc) == iframe);
  // Round trip through serialization: locator still resolves to an iframe.
  Node reparsed = dom::parse(html);
  const Node* again = dom::resolve_locator(reparsed, loc);
  REQUIRE(again != nullptr);
  CHECK(again->tag == "iframe");
}

TEST_CASE("text_content decodes entities") {
  Node root = dom::parse("<p>&#72;ello &amp; bye</p>");
  CHECK(dom::first_by_tag(root, "p")->text_content() == "Hello & bye");
}

TEST_CASE("visible text skips script style and whitespace") {
  Node root = dom::parse(
      "<html><head><style>p{}</style><script>var a;</script></head>"
      "<body><p>keep</p>\n  <div>also</div></body></html>");
  auto texts = dom::visible_text_nodes(root);
  REQUIRE(texts.size() == 2);
  CHECK(texts[0]->text == "keep");
  CHECK(texts[1]->text == "also");
}

TEST_CASE("visible attribute slots") {
  Node root = dom::parse(
      "<body><input type=\"text\" placeholder=\"Email\">"
      "<input type=\"submit\" value=\"Sign in\">"
      "<input type=\"hidden\" value=\"secret\">"
      "<img alt=\"Logo\" src=\"l.png\"></body>");
  auto slots = dom::visible_attr_slots(root);
  std::vector<std::string> got;
  for (auto& s : slots)
    got.push_back(s.node->attr(s.attr).value());
  REQUIRE(got.size() == 3);
  CHECK(got[0] == "Email");
  CHECK(got[1] == "Sign in");
  CHECK(got[2] == "Logo");
}

TEST_CASE("resource references exclude anchors and form actions") {
  Node root = dom::parse(
      "<body><img src=\"img/logo.svg\"><script src=\"app.js\"></script>"
      "<link rel=\"stylesheet\" href=\"style.css\"><iframe src=\"frame.html\"></iframe>"
      "<a href=\"https://paypal.com/help\">help</a>"
      "<form action=\"/capture\"><input type=\"password\" name=\"pw\"></form></body>");
  auto resources = dom::resource_refs(root);
  REQUIRE(resources.size() == 4);
  auto anchors = dom::anchor_refs(root);
  REQUIRE(anchors.size() == 1);
  CHECK(anchors[0].value == "https://paypal.com/help");
  auto actions = dom::form_actions(root);
  REQUIRE(actions.size() == 1);
  CHECK(actions[0].value == "/capture");
}

TEST_CASE("inline style parsing") {
  Node root = dom::parse(
      "<div style=\"position: absolute; left: 10px; top: 20px; width: 300.5px; height: 40px; "
      "opacity: 0.03\"></div>");
  const Node* div = dom::first_by_tag(root, "div");
  REQUIRE(div != nullptr);
  auto rect = dom::rect_of(*div);
  REQUIRE(rect.has_value());
  CHECK(rect->x == 10.0);
  CHECK(rect->y == 20.0);
  CHECK(rect->w == 300.5);
  CHECK(rect->h == 40.0);
  CHECK(dom::opacity_of(*div) == 0.03);

  Node plain = dom::parse("<div></div>");
  CHECK(dom::opacity_of(*dom::first_by_tag(plain, "div")) == 1.0);
  CHECK_FALSE(dom::rect_of(*dom::first_by_tag(plain, "div")).has_value());
}

TEST_CASE("rectangle overlap agrees with a sampling oracle") {
  struct Case {
    dom::Rect a, b;
  } cases[] = {
      {{0, 0, 100, 100}, {50, 50, 100, 100}},
      {{0, 0, 100, 100}, {200, 200, 10, 10}},
      {{0, 0, 100, 100}, {0, 0, 100, 100}},
      {{10, 20, 300, 40}, {5, 25, 100, 100}},
      {{0, 0, 50, 200}, {25, 100, 50, 200}},
  };
  for (const auto& c : cases) {
    double got = dom::Rect::overlap_area(c.a, c.b);
    double want = oracle::rect_overlap_sampled(c.a.x, c.a.y, c.a.w, c.a.h,
                                               c.b.x, c.b.y, c.b.w, c.b.h);
    CHECK(got == Catch::Approx(want).margin(c.a.area() * 0.01 + 0.5));
  }
}
