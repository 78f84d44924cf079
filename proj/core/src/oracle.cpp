#include "dphh/oracle.hpp"

namespace dphh {

FrequencyOracle::~FrequencyOracle() = default;

}  // namespace dphh
