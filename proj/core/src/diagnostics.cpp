// Part of the FSol project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0

#include "fsol/diagnostics.hpp"

#include <algorithm>
#include <sstream>

#include "json.hpp"

namespace fsol {

SourceSpan mergeSpans(const SourceSpan& a, const SourceSpan& b) {
    if (!a.hasLocation()) return b;
    if (!b.hasLocation()) return a;
    SourceSpan out = a;
    if (b.startOffset < a.startOffset) {
        out.startLine = b.startLine;
        out.startColumn = b.startColumn;
        out.startOffset = b.startOffset;
    }
    if (b.endOffset > a.endOffset) {
        out.endLine = b.endLine;
        out.endColumn = b.endColumn;
        out.endOffset = b.endOffset;
    }
    return out;
}

Diagnostic makeError(std::string code, std::string message, SourceSpan span) {
    return Diagnostic{Severity::Error, std::move(code), std::move(message), std::move(span)};
}

Diagnostic makeWarning(std::string code, std::string message, SourceSpan span) {
    return Diagnostic{Severity::Warning, std::move(code), std::move(message), std::move(span)};
}

bool hasErrors(const std::vector<Diagnostic>& diags) {
    return std::any_of(diags.begin(), diags.end(),
                       [](const Diagnostic& d) { return d.severity == Severity::Error; });
}

std::string renderDiagnostic(const Diagnostic& diag) {
    std::ostringstream out;
    if (diag.span.hasLocation()) {
        out << diag.span.file << ":" << diag.span.startLine << ":" << diag.span.startColumn
            << ": ";
    } else if (!diag.span.file.empty()) {
        out << diag.span.file << ": ";
    }
    out << (diag.severity == Severity::Error ? "error" : "warning");
    out << "[" << diag.code << "]: " << diag.message;
    return out.str();
}

std::string renderDiagnostics(const std::vector<Diagnostic>& diags) {
    std::ostringstream out;
    for (const auto& d : diags) out << renderDiagnostic(d) << "\n";
    return out.str();
}

std::string diagnosticsToJson(const std::vector<Diagnostic>& diags) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& d : diags) {
        nlohmann::json span;
        span["file"] = d.span.file;
        span["line"] = d.span.startLine;
        span["col"] = d.span.startColumn;
        span["endLine"] = d.span.endLine;
        span["endCol"] = d.span.endColumn;
        nlohmann::json entry;
        entry["code"] = d.code;
        entry["severity"] = d.severity == Severity::Error ? "error" : "warning";
        entry["message"] = d.message;
        entry["span"] = span;
        arr.push_back(entry);
    }
    return arr.dump(2);
}

void sortDiagnostics(std::vector<Diagnostic>& diags) {
    std::stable_sort(diags.begin(), diags.end(), [](const Diagnostic& a, const Diagnostic& b) {
        if (a.span.file != b.span.file) return a.span.file < b.span.file;
        return a.span.startOffset < b.span.startOffset;
    });
}

} // namespace fsol
