#pragma once

// Report assembly and rendering. JSON output is deterministic: a report
// built from identical numbers serializes to identical bytes.

#include <ostream>
#include <string>
#include <vector>

#include "bayescv/evidence.hpp"
#include "bayescv/lattice.hpp"

namespace bayescv {

struct ScoreEntry {
    std::string name;
    double log_likelihood = 0.0;
    CvScore loo;
    std::vector<CvScore> leave_m_out;  // the extra requested sizes
};

struct ScoreReport {
    int d = 0;
    std::vector<ScoreEntry> entries;
};

struct VerifyEntry {
    std::string name;
    VerifyResult result;
};

struct VerifyReport {
    int d = 0;
    double tolerance = 0.0;
    std::vector<VerifyEntry> entries;
    bool all_pass = false;
};

struct SubsetsEntry {
    std::string name;
    DecompositionTable table;
};

struct SubsetsReport {
    int d = 0;
    std::vector<SubsetsEntry> entries;
};

struct CompareReport {
    int d = 0;
    EvidenceReport evidence;
};

// Text renderings round headline values to 4 decimals; JSON keeps full
// precision; CSV uses %.17g for real-valued columns.
void render_text(const ScoreReport& report, std::ostream& out);
void render_json(const ScoreReport& report, std::ostream& out);
void render_csv(const ScoreReport& report, std::ostream& out);

void render_text(const VerifyReport& report, std::ostream& out);
void render_json(const VerifyReport& report, std::ostream& out);
void render_csv(const VerifyReport& report, std::ostream& out);

void render_text(const SubsetsReport& report, std::ostream& out);
void render_json(const SubsetsReport& report, std::ostream& out);
void render_csv(const SubsetsReport& report, std::ostream& out);

void render_text(const CompareReport& report, std::ostream& out);
void render_json(const CompareReport& report, std::ostream& out);
void render_csv(const CompareReport& report, std::ostream& out);

}  // namespace bayescv
