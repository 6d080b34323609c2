#include "support/meshes.hpp"
#include "tetroc/errors.hpp"
#include "tetroc/io.hpp"

#include <doctest.h>

#include <cstring>
#include <random>

using namespace tetroc;

namespace {

IoError::Kind io_kind(const std::function<void()>& f) {
  try {
    f();
  } catch (const IoError& e) {
    return e.kind();
  }
  FAIL("no IoError thrown");
  return IoError::Kind::schema;
}

std::size_t count_lines(const std::string& text, const std::string& prefix) {
  std::size_t n = 0, pos = 0;
  while (pos < text.size()) {
    const auto end = text.find('\n', pos);
    if (text.compare(pos, prefix.size(), prefix) == 0) ++n;
    pos = end == std::string::npos ? text.size() : end + 1;
  }
  return n;
}

std::string placement_json(const std::string& translation, const std::string& rotation = "[1,0,0,0,1,0,0,0,1]") {
  return R"({"block": "k", "rotation": )" + rotation + R"(, "translation": )" + translation + R"(, "frame": false})";
}

std::string kitten_doc(const std::string& placements) {
  return R"({"format_version": 1, "blocks": [{"name": "k", "family": "kitten", "params": []}], "placements": [)" +
         placements + "]}";
}

}  // namespace

TEST_CASE("binary STL round trip is bit exact") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<float> u(-100, 100);
  auto tris = testmesh::box(Vector3d(0, 0, 0), Vector3d(1, 2, 3));
  for (auto& t : tris)
    for (auto& v : t)
      for (int k = 0; k < 3; ++k) v[k] += static_cast<double>(u(rng));  // float-representable values
  const auto bytes = stl_binary(tris);
  CHECK(bytes.size() == 84 + 50 * 12);
  const auto m = parse_stl(bytes);
  REQUIRE(m.triangles.size() == 12);
  for (std::size_t t = 0; t < 12; ++t)
    for (int v = 0; v < 3; ++v) CHECK(m.triangles[t][v] == tris[t][v]);
  CHECK(stl_binary(m.triangles) == bytes);
}

TEST_CASE("ASCII STL") {
  const auto cube = testmesh::box(Vector3d(0, 0, 0), Vector3d(4, 4, 4));
  const auto text = stl_ascii(cube, "my cube");
  const auto m = parse_stl(text);
  CHECK(m.triangles.size() == 12);
  CHECK(m.triangles[5] == cube[5]);
  CHECK(io_kind([&] { parse_stl(text.substr(0, text.size() / 2)); }) == IoError::Kind::truncated);
  std::string bad = text;
  bad.replace(bad.find("vertex"), 6, "vertox");
  CHECK(io_kind([&] { parse_stl(bad); }) == IoError::Kind::malformed_ascii);
  bad = text;
  bad.replace(bad.find("vertex 0") + 7, 1, "x");
  CHECK(io_kind([&] { parse_stl(bad); }) == IoError::Kind::malformed_ascii);
}

TEST_CASE("broken binary STL files are told apart") {
  const auto bytes = stl_binary(testmesh::box(Vector3d(0, 0, 0), Vector3d(1, 1, 1)));
  CHECK(io_kind([&] { parse_stl(bytes.substr(0, bytes.size() - 7)); }) == IoError::Kind::count_mismatch);
  CHECK(io_kind([&] { parse_stl(bytes + "xx"); }) == IoError::Kind::count_mismatch);
  CHECK(io_kind([&] { parse_stl(bytes.substr(0, 40)); }) == IoError::Kind::malformed_header);
  CHECK(io_kind([&] { read_stl("/nonexistent/file.stl"); }) == IoError::Kind::open_failed);
  std::string empty(84, '\0');
  CHECK_THROWS_AS(parse_stl(empty), MeshError);  // consistent header, zero triangles
}

TEST_CASE("a binary file whose header starts with 'solid' is still binary") {
  auto bytes = stl_binary(testmesh::box(Vector3d(0, 0, 0), Vector3d(1, 1, 1)));
  std::memcpy(bytes.data(), "solid", 5);
  CHECK(parse_stl(bytes).triangles.size() == 12);
}

TEST_CASE("OBJ output shares vertices") {
  const auto text = obj_text({{"block", float_triangles(boundary_surface(make_kitten()))}});
  CHECK(count_lines(text, "v ") == 8);
  CHECK(count_lines(text, "f ") == 12);
  CHECK(count_lines(text, "g block") == 1);

  const auto a = generate_assembly(AssemblyKind::cushion_grid, {1, 3, 3});
  const auto groups = assembly_groups(a);
  REQUIRE(groups.size() == 2);
  CHECK(groups[0].name == "frame");
  CHECK(groups[1].name == "free");
  const std::size_t per_block = boundary_surface(make_cushion(1)).num_triangles();
  CHECK(groups[0].triangles.size() == 8 * per_block);
  CHECK(groups[1].triangles.size() == per_block);
  const auto obj = obj_text(groups);
  CHECK(count_lines(obj, "g frame") == 1);
  CHECK(count_lines(obj, "g free") == 1);
  CHECK(count_lines(obj, "f ") == 9 * per_block);
}

TEST_CASE("assembly documents round trip") {
  for (const auto& model : {generate_assembly(AssemblyKind::kitten_strip, {3}),
                            generate_assembly(AssemblyKind::cushion_grid, {3, 3, 4}, FrameMode::none),
                            generate_assembly(AssemblyKind::tetra_interlocking, {3, 3})}) {
    const auto doc = to_document(model);
    const auto text = assembly_json(doc);
    CHECK(assembly_json(parse_assembly(text)) == text);
    const auto back = to_model(parse_assembly(text));
    REQUIRE(back.size() == model.size());
    for (std::size_t i = 0; i < model.size(); ++i) {
      CHECK(back.cells(i) == model.cells(i));
      CHECK(back.is_frame(i) == model.is_frame(i));
    }
    CHECK(back.layout().has_value());
    CHECK(doc.blocks.front().family != "custom");
  }
  CHECK(to_model(parse_assembly(assembly_json(to_document(generate_assembly(AssemblyKind::kitten_strip, {3})))))
            .size() == 3);
}

TEST_CASE("custom blocks and arbitrary isometries round trip") {
  const Block odd = make_custom_block("pair", {CellKey::tet(0, 0, 0), CellKey::oct(1, 0, 0)});
  std::mt19937_64 rng(11);
  const auto& group = point_group();
  std::vector<Placement> placements;
  for (int k = 0; k < 4; ++k) {
    const Vector3i t(8 * k, 2 * (rng() % 3), 2 * (rng() % 3));
    placements.push_back({static_cast<std::size_t>(k % 2), HoneycombIsometry(group[rng() % 48].rotation, t), k == 0});
  }
  const AssemblyModel model({odd, make_ufo()}, placements);
  const auto doc = to_document(model);
  CHECK(doc.blocks[0].family == "custom");
  CHECK(doc.blocks[0].cells.size() == 2);
  CHECK(doc.blocks[1].family == "ufo");
  const auto text = assembly_json(doc);
  CHECK(assembly_json(parse_assembly(text)) == text);
  const auto back = to_model(parse_assembly(text));
  for (std::size_t i = 0; i < model.size(); ++i) CHECK(back.cells(i) == model.cells(i));
}

TEST_CASE("truncation slab survives the round trip") {
  auto doc = to_document(generate_assembly(AssemblyKind::tetra_interlocking, {3, 3}));
  doc.slab = std::pair{Rational(1, 2), Rational(3, 2)};
  const auto text = assembly_json(doc);
  CHECK(text.find("\"1/2\"") != std::string::npos);
  const auto back = parse_assembly(text);
  REQUIRE(back.slab);
  CHECK(back.slab->first == Rational(1, 2));
  CHECK(assembly_json(back) == text);
}

TEST_CASE("invalid assembly documents") {
  const auto ok = kitten_doc(placement_json("[0,0,0]"));
  CHECK(to_model(parse_assembly(ok)).size() == 1);
  CHECK(io_kind([&] { to_model(parse_assembly(kitten_doc(placement_json("[1,0,0]")))); }) == IoError::Kind::parity);
  CHECK(io_kind([&] { to_model(parse_assembly(kitten_doc(placement_json("[0,0,0]", "[1,0,0,0,1,0,0,0,2]")))); }) ==
        IoError::Kind::rotation);
  CHECK(io_kind([&] { to_model(parse_assembly(kitten_doc(placement_json("[0,0,0]", "[1,0,0,1,0,0,0,0,1]")))); }) ==
        IoError::Kind::rotation);
  try {
    to_model(parse_assembly(kitten_doc(placement_json("[2,0,0]") + "," + placement_json("[0,0,0]") + "," +
                                       placement_json("[2,0,0]"))));
    FAIL("overlap not detected");
  } catch (const OverlapError& e) {
    CHECK(e.first() == 0);
    CHECK(e.second() == 2);
  }
  for (const std::string bad : {
           std::string("not json"),
           std::string("[]"),
           std::string(R"({"format_version": 2, "blocks": [], "placements": []})"),
           std::string(R"({"format_version": 1, "placements": []})"),
           kitten_doc(placement_json("[0,0]")),
           kitten_doc(placement_json("[0,0,\"1\"]")),
           kitten_doc(R"({"block": "nobody", "rotation": [1,0,0,0,1,0,0,0,1], "translation": [0,0,0], "frame": false})"),
           kitten_doc(R"({"block": "k", "rotation": [1,0,0,0,1,0,0,0,1], "translation": [0,0,0]})"),
           R"({"format_version": 1, "blocks": [{"name": "k", "family": "dragon", "params": []}], "placements": [)" +
               placement_json("[0,0,0]") + "]}",
           R"({"format_version": 1, "extra": 1, "blocks": [{"name": "k", "family": "kitten", "params": []}], "placements": [)" +
               placement_json("[0,0,0]") + "]}",
           R"({"format_version": 1, "blocks": [{"name": "k", "family": "custom", "params": [], "cells": [["tet", 0, 0]]}], "placements": [)" +
               placement_json("[0,0,0]") + "]}",
           R"({"format_version": 1, "blocks": [{"name": "k", "family": "custom", "params": [], "cells": [["oct", 0, 0, 0]]}], "placements": [)" +
               placement_json("[0,0,0]") + "]}",
       }) {
    CAPTURE(bad);
    CHECK(io_kind([&] { to_model(parse_assembly(bad)); }) == IoError::Kind::schema);
  }
  // Block-level problems keep their own error type.
  CHECK_THROWS_AS(to_model(parse_assembly(
                      R"({"format_version": 1, "blocks": [{"name": "k", "family": "cushion", "params": [0]}], "placements": [)" +
                      placement_json("[0,0,0]") + "]}")),
                  BlockError);
}

TEST_CASE("reports use exact rational strings and are deterministic") {
  const auto model = generate_assembly(AssemblyKind::kitten_strip, {3}, FrameMode::none);
  const auto v = check_interlocking(model);
  REQUIRE_FALSE(v.interlocked);
  const ReportContext ctx{"strip", {}, std::nullopt};
  const auto text = report_json(model, v, ctx);
  CHECK(text == report_json(model, check_interlocking(model), ctx));
  CHECK(text.find("\"interlocked\": false") != std::string::npos);
  CHECK(text.find("\"1/1\"") != std::string::npos);
  CHECK(text.find("\"version\"") != std::string::npos);
  CHECK(text.find("\"placements\": 3") != std::string::npos);
  // No floating-point numbers: the version string is the only dotted value.
  std::string rest = text;
  rest.erase(rest.find(kToolVersion), std::strlen(kToolVersion));
  CHECK(rest.find('.') == std::string::npos);
}

TEST_CASE("DOT graphs") {
  const auto model = generate_assembly(AssemblyKind::cushion_grid, {1, 3, 3});
  const auto dot = graph_dot(model);
  CHECK(count_lines(dot, "  0 [") == 1);
  std::size_t edges = 0;
  for (std::size_t pos = dot.find(" -- "); pos != std::string::npos; pos = dot.find(" -- ", pos + 1)) ++edges;
  CHECK(edges == 12);  // 3×3 grid graph
  CHECK(count_lines(dot, "  4 [label=\"4 (1,1)\"];") == 1);
  CHECK(dot.find("shape=box") != std::string::npos);
}

TEST_CASE("cell lists and block statistics") {
  const auto text = cells_json(make_kitten().cells);
  CHECK(text.find("\"volume\": \"2/1\"") != std::string::npos);
  CHECK(text.find("\"tetrahedra\": 2") != std::string::npos);
  const auto stats = stats_json(make_shuriken(2, 2));
  CHECK(stats.find("\"euler_characteristic\": 0") != std::string::npos);
  CHECK(stats.find("\"genus\": 1") != std::string::npos);
}
