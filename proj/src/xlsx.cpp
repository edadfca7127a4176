#include "cellcheck/errors.hpp"
#include "cellcheck/formula.hpp"
#include "cellcheck/io.hpp"
#include "zip_archive.hpp"

#include <expat.h>

#include <map>
#include <memory>
#include <set>

namespace cellcheck {

namespace {

/// Minimal element tree. Namespace prefixes are dropped from element and
/// attribute names ("r:id" becomes "id").
struct XmlElement {
    std::string name;
    std::vector<std::pair<std::string, std::string>> attributes;
    std::string text;
    std::vector<XmlElement> children;

    const std::string* attr(std::string_view key) const {
        for (const auto& [k, v] : attributes) {
            if (k == key) return &v;
        }
        return nullptr;
    }
    const XmlElement* child(std::string_view key) const {
        for (const auto& c : children) {
            if (c.name == key) return &c;
        }
        return nullptr;
    }
};

std::string local_name(const char* qualified) {
    std::string_view name(qualified);
    auto colon = name.rfind(':');
    return std::string(colon == std::string_view::npos ? name : name.substr(colon + 1));
}

class XmlTreeBuilder {
public:
    XmlElement parse(const std::string& document, const std::string& part) {
        std::unique_ptr<std::remove_pointer_t<XML_Parser>, decltype(&XML_ParserFree)> parser(
            XML_ParserCreate("UTF-8"), &XML_ParserFree);
        if (!parser) throw FormatError("cannot create XML parser");
        XML_SetUserData(parser.get(), this);
        XML_SetElementHandler(parser.get(), &XmlTreeBuilder::on_start, &XmlTreeBuilder::on_end);
        XML_SetCharacterDataHandler(parser.get(), &XmlTreeBuilder::on_text);
        if (XML_Parse(parser.get(), document.data(), static_cast<int>(document.size()), XML_TRUE) == XML_STATUS_ERROR) {
            throw FormatError("malformed XML in " + part + ": " + XML_ErrorString(XML_GetErrorCode(parser.get())) +
                              " (line " + std::to_string(XML_GetCurrentLineNumber(parser.get())) + ")");
        }
        if (root_.name.empty()) throw FormatError("empty XML part " + part);
        return std::move(root_);
    }

private:
    static void on_start(void* self_ptr, const XML_Char* name, const XML_Char** attrs) {
        auto* self = static_cast<XmlTreeBuilder*>(self_ptr);
        XmlElement element;
        element.name = local_name(name);
        for (std::size_t i = 0; attrs[i]; i += 2) element.attributes.emplace_back(local_name(attrs[i]), attrs[i + 1]);
        if (self->stack_.empty()) {
            self->root_ = std::move(element);
            self->stack_.push_back(&self->root_);
        } else {
            auto& siblings = self->stack_.back()->children;
            siblings.push_back(std::move(element));
            self->stack_.push_back(&siblings.back());
        }
    }
    static void on_end(void* self_ptr, const XML_Char*) {
        static_cast<XmlTreeBuilder*>(self_ptr)->stack_.pop_back();
    }
    static void on_text(void* self_ptr, const XML_Char* text, int length) {
        auto* self = static_cast<XmlTreeBuilder*>(self_ptr);
        if (!self->stack_.empty()) self->stack_.back()->text.append(text, static_cast<std::size_t>(length));
    }

    XmlElement root_;
    std::vector<XmlElement*> stack_;  // children vectors only grow at the back
};

XmlElement parse_xml(const std::string& document, const std::string& part) {
    return XmlTreeBuilder().parse(document, part);
}

std::string directory_of(const std::string& part) {
    auto slash = part.rfind('/');
    return slash == std::string::npos ? std::string() : part.substr(0, slash + 1);
}

/// Resolves a relationship target against the directory of its source part.
std::string resolve_target(const std::string& base_dir, const std::string& target) {
    std::string joined = !target.empty() && target.front() == '/' ? target.substr(1) : base_dir + target;
    std::vector<std::string> segments;
    std::size_t pos = 0;
    while (pos <= joined.size()) {
        auto slash = joined.find('/', pos);
        std::string segment = joined.substr(pos, slash == std::string::npos ? std::string::npos : slash - pos);
        pos = slash == std::string::npos ? joined.size() + 1 : slash + 1;
        if (segment == "..") {
            if (!segments.empty()) segments.pop_back();
        } else if (!segment.empty() && segment != ".") {
            segments.push_back(std::move(segment));
        }
    }
    std::string out;
    for (std::size_t i = 0; i < segments.size(); ++i) {
        if (i) out.push_back('/');
        out += segments[i];
    }
    return out;
}

struct Relationship {
    std::string type;
    std::string target;
};

bool ends_with(std::string_view text, std::string_view suffix) {
    return text.size() >= suffix.size() && text.substr(text.size() - suffix.size()) == suffix;
}

std::map<std::string, Relationship> read_relationships(const detail::ZipArchive& zip, const std::string& part) {
    std::map<std::string, Relationship> out;
    std::string rels_part = directory_of(part) + "_rels/" + part.substr(directory_of(part).size()) + ".rels";
    auto document = zip.read(rels_part);
    if (!document) return out;
    XmlElement root = parse_xml(*document, rels_part);
    std::string base = directory_of(part);
    for (const auto& rel : root.children) {
        const std::string* id = rel.attr("Id");
        const std::string* target = rel.attr("Target");
        const std::string* type = rel.attr("Type");
        if (!id || !target) continue;
        if (const std::string* mode = rel.attr("TargetMode"); mode && *mode == "External") continue;
        out[*id] = Relationship{type ? *type : std::string(), resolve_target(base, *target)};
    }
    return out;
}

std::string rich_text(const XmlElement& element) {
    // <si>/<is> hold either a single <t> or runs <r><t/></r>; phonetic
    // annotations (<rPh>) are not part of the value.
    std::string out;
    for (const auto& child : element.children) {
        if (child.name == "t") {
            out += child.text;
        } else if (child.name == "r") {
            if (const XmlElement* t = child.child("t")) out += t->text;
        }
    }
    return out;
}

struct RawCell {
    CellAddress address;
    std::optional<CellValue> value;
    std::optional<std::string> formula_text;
    std::optional<std::string> shared_index;
};

std::optional<CellValue> cell_value(const XmlElement& c, const std::vector<std::string>& shared_strings) {
    const std::string* type = c.attr("t");
    std::string t = type ? *type : "n";
    if (t == "inlineStr") {
        if (const XmlElement* is = c.child("is")) return CellValue::text(rich_text(*is));
        return std::nullopt;
    }
    const XmlElement* v = c.child("v");
    if (!v) return std::nullopt;
    if (t == "s") {
        std::size_t index = 0;
        try {
            index = std::stoul(v->text);
        } catch (const std::exception&) {
            throw FormatError("bad shared string index '" + v->text + "'");
        }
        if (index >= shared_strings.size()) throw FormatError("shared string index out of range");
        return CellValue::text(shared_strings[index]);
    }
    if (t == "b") return CellValue::boolean(v->text == "1" || iequals(v->text, "true"));
    if (t == "e") return CellValue::error(v->text);
    if (t == "str" || t == "d") return CellValue::text(v->text);
    if (v->text.empty()) return std::nullopt;
    auto number = CellValue::parse_number(v->text);
    if (!number) throw FormatError("bad numeric cell value '" + v->text + "'");
    return number;
}

void read_sheet(const XmlElement& root, int sheet_index, const std::vector<std::string>& shared_strings,
                std::vector<RawCell>& out) {
    const XmlElement* data = root.child("sheetData");
    if (!data) return;
    int next_row = 0;
    for (const auto& row : data->children) {
        if (row.name != "row") continue;
        int row_index = next_row;
        if (const std::string* r = row.attr("r")) {
            auto parsed = CellValue::parse_number(*r);
            if (!parsed || parsed->as_number() < 1 || parsed->as_number() > kMaxRows) {
                throw FormatError("bad row number '" + *r + "'");
            }
            row_index = static_cast<int>(parsed->as_number()) - 1;
        }
        next_row = row_index + 1;
        int next_column = 0;
        for (const auto& c : row.children) {
            if (c.name != "c") continue;
            RawCell cell;
            cell.address = {sheet_index, next_column, row_index};
            if (const std::string* ref = c.attr("r")) {
                auto a1 = parse_a1(*ref);
                if (!a1) throw FormatError("bad cell reference '" + *ref + "'");
                cell.address.column = a1->column;
                cell.address.row = a1->row;
            }
            next_column = cell.address.column + 1;
            cell.value = cell_value(c, shared_strings);
            if (const XmlElement* f = c.child("f")) {
                const std::string* kind = f->attr("t");
                if (kind && *kind == "shared") {
                    if (const std::string* si = f->attr("si")) cell.shared_index = *si;
                }
                if (!f->text.empty()) cell.formula_text = f->text;
            }
            out.push_back(std::move(cell));
        }
    }
}

}  // namespace

Workbook load_xlsx_bytes(std::string_view bytes, std::vector<std::string>& warnings) {
    detail::ZipArchive zip(bytes);

    std::string workbook_part = "xl/workbook.xml";
    for (const auto& [id, rel] : read_relationships(zip, "")) {
        if (ends_with(rel.type, "/officeDocument")) workbook_part = rel.target;
    }
    auto workbook_xml = zip.read(workbook_part);
    if (!workbook_xml) throw FormatError("missing workbook part " + workbook_part);
    XmlElement workbook_root = parse_xml(*workbook_xml, workbook_part);
    auto relationships = read_relationships(zip, workbook_part);

    std::vector<std::string> shared_strings;
    std::optional<std::string> strings_part;
    for (const auto& [id, rel] : relationships) {
        if (ends_with(rel.type, "/sharedStrings")) strings_part = rel.target;
    }
    if (!strings_part && zip.contains(directory_of(workbook_part) + "sharedStrings.xml")) {
        strings_part = directory_of(workbook_part) + "sharedStrings.xml";
    }
    if (strings_part) {
        if (auto document = zip.read(*strings_part)) {
            XmlElement sst = parse_xml(*document, *strings_part);
            for (const auto& si : sst.children) {
                if (si.name == "si") shared_strings.push_back(rich_text(si));
            }
        }
    }

    const XmlElement* sheets = workbook_root.child("sheets");
    if (!sheets) throw FormatError("workbook part lists no worksheets");

    WorkbookBuilder builder;
    std::vector<RawCell> raw;
    for (const auto& sheet : sheets->children) {
        if (sheet.name != "sheet") continue;
        const std::string* name = sheet.attr("name");
        const std::string* id = sheet.attr("id");
        if (!name || !id) throw FormatError("worksheet entry without name or relationship id");
        int index = builder.add_sheet(*name);
        auto rel = relationships.find(*id);
        if (rel == relationships.end()) throw FormatError("worksheet '" + *name + "' has no part");
        if (!ends_with(rel->second.type, "/worksheet")) continue;  // chart sheets stay empty
        auto document = zip.read(rel->second.target);
        if (!document) throw FormatError("missing worksheet part " + rel->second.target);
        read_sheet(parse_xml(*document, rel->second.target), index, shared_strings, raw);
    }

    // Shared formulas: the anchor cell carries the text, the others only the
    // group index, and take the anchor formula shifted by their offset.
    std::map<std::pair<int, std::string>, std::pair<CellAddress, Expr>> anchors;
    std::map<CellAddress, Expr> parsed;
    std::set<CellAddress> unparsable;
    auto describe = [&](const CellAddress& a) {
        return "sheet " + std::to_string(a.sheet_index + 1) + " " + format_a1(a.column, a.row);
    };
    for (const auto& cell : raw) {
        if (!cell.formula_text) continue;
        try {
            Expr ast = parse_formula("=" + *cell.formula_text);
            if (cell.shared_index) anchors.insert_or_assign({cell.address.sheet_index, *cell.shared_index},
                                                            std::make_pair(cell.address, ast));
            parsed.emplace(cell.address, std::move(ast));
        } catch (const ParseError& e) {
            warnings.push_back(describe(cell.address) + ": " + e.what() + "; kept as text");
            unparsable.insert(cell.address);
        }
    }

    for (auto& cell : raw) {
        std::optional<Formula> formula;
        if (auto it = parsed.find(cell.address); it != parsed.end()) {
            formula = Formula{"=" + *cell.formula_text, std::move(it->second), cell.value};
        } else if (unparsable.count(cell.address)) {
            cell.value = CellValue::text("=" + *cell.formula_text);
        } else if (cell.shared_index) {
            auto anchor = anchors.find({cell.address.sheet_index, *cell.shared_index});
            if (anchor == anchors.end()) {
                warnings.push_back(describe(cell.address) + ": shared formula " + *cell.shared_index +
                                   " has no anchor; using cached value");
            } else {
                const auto& [origin, ast] = anchor->second;
                try {
                    Expr moved = translate(ast, cell.address.column - origin.column, cell.address.row - origin.row);
                    std::string source = serialize(moved);
                    formula = Formula{std::move(source), std::move(moved), cell.value};
                } catch (const Error& e) {
                    warnings.push_back(describe(cell.address) + ": " + e.what() + "; using cached value");
                }
            }
        }
        if (formula) {
            builder.set_cell(cell.address, std::move(*formula));
        } else if (cell.value) {
            builder.set_cell(cell.address, *cell.value);
        }
    }
    return std::move(builder).build();
}

Workbook load_xlsx(const std::filesystem::path& path, std::vector<std::string>& warnings) {
    std::string bytes = read_file(path);
    try {
        return load_xlsx_bytes(bytes, warnings);
    } catch (const FormatError& e) {
        throw FormatError(path.string() + ": " + e.what());
    }
}

Workbook load_xlsx(const std::filesystem::path& path) {
    std::vector<std::string> warnings;
    return load_xlsx(path, warnings);
}

Workbook load_workbook(const std::filesystem::path& path, std::vector<std::string>& warnings) {
    if (iequals(path.extension().string(), ".xlsx")) return load_xlsx(path, warnings);
    try {
        return load_fixture(path);
    } catch (const FormatError& e) {
        throw FormatError(path.string() + ": " + e.what());
    }
}

}  // namespace cellcheck
