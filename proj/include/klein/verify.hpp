#ifndef KLEIN_VERIFY_HPP
#define KLEIN_VERIFY_HPP

#include <string>
#include <vector>

#include "klein/io.hpp"

namespace klein {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0;
    double budget = 0;  // seconds; 0 means none
};

/* suite names in criterion order, e.g. "prop1-corpus" for criterion 2 */
std::vector<std::string> const& suite_names();
int suite_id(std::string const& name);  // 1..9, InvalidArgument otherwise

CriterionResult run_criterion(int id, unsigned seed = 1);
/* criteria run concurrently; results come back ordered by id */
std::vector<CriterionResult> run_all(unsigned seed = 1, bool parallel = true);

Json to_json(CriterionResult const& r);
std::string summary_line(CriterionResult const& r);

}  // namespace klein

#endif
