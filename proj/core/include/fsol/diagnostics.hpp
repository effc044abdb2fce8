// Part of the FSol project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0

#ifndef FSOL_DIAGNOSTICS_HPP
#define FSOL_DIAGNOSTICS_HPP

#include <string>
#include <vector>

namespace fsol {

// Half-open byte range plus 1-based line/column endpoints. A span with
// startLine == 0 carries no usable location (synthesized nodes).
struct SourceSpan {
    std::string file;
    int startLine = 0;
    int startColumn = 0;
    int endLine = 0;
    int endColumn = 0;
    size_t startOffset = 0;
    size_t endOffset = 0;

    bool hasLocation() const { return startLine > 0; }
};

SourceSpan mergeSpans(const SourceSpan& a, const SourceSpan& b);

enum class Severity {
    Error,
    Warning,
};

struct Diagnostic {
    Severity severity = Severity::Error;
    std::string code;
    std::string message;
    SourceSpan span;
};

Diagnostic makeError(std::string code, std::string message, SourceSpan span);
Diagnostic makeWarning(std::string code, std::string message, SourceSpan span);

bool hasErrors(const std::vector<Diagnostic>& diags);

// "file:line:col: error[CODE]: message"; the location prefix is dropped
// when the span has none.
std::string renderDiagnostic(const Diagnostic& diag);
std::string renderDiagnostics(const std::vector<Diagnostic>& diags);

// Stable machine-readable form used by `--format json`.
std::string diagnosticsToJson(const std::vector<Diagnostic>& diags);

// Orders by file, then start offset, then code; used to keep checker
// output independent of traversal incidentals.
void sortDiagnostics(std::vector<Diagnostic>& diags);

} // namespace fsol

#endif
