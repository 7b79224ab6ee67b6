#pragma once

#include <string>
#include <string_view>
#include <variant>

#include "truecc/hda.hpp"
#include "truecc/related.hpp"
#include "truecc/st.hpp"
#include "truecc/stc.hpp"
#include "truecc/translate.hpp"

namespace truecc {

inline constexpr int kDocumentVersion = 1;

// Alternative order matches DocKind.
using DocValue = std::variant<STStructure, STCStructure, ConfigStructure, InpureEventStructure, HDA, Sculpture,
                              ChuSpace>;

enum class DocKind { ST, STC, Config, Event, HDA, Sculpture, Chu };

const char* kind_name(DocKind k);
DocKind parse_kind(std::string_view name);

struct Document {
  DocValue value;
  DocKind kind() const { return static_cast<DocKind>(value.index()); }
};

// ParseError carries "line L, column C"; structural problems raise
// SchemaError; semantic checks are delegated to the owning module.
Document parse_document(std::string_view text);
// Canonical text: sorted keys and arrays, two-space indent, final newline.
std::string save_document(const Document& doc);

// "-" reads standard input.
std::string read_input(const std::string& path);
Document load_document(const std::string& path);

}  // namespace truecc
