#include <stdio.h>
#include <string.h>

#include "planemf.h"

int main(void) {
    PmfInstance *inst = NULL;
    if (pmf_instance_gen_gk(4, &inst) != PMF_STATUS_OK) {
        return 10;
    }
    int64_t num = 0, den = 0;
    char *json = NULL;
    if (pmf_solve(inst, PMF_STAGE_FRACTIONAL, &num, &den, &json) != PMF_STATUS_OK) {
        return 11;
    }
    printf("%lld/%lld\n", (long long)num, (long long)den);
    pmf_string_free(json);

    PmfInstance *bad = NULL;
    PmfStatus status = pmf_instance_parse("planemf 2\n", &bad);
    if (status != PMF_STATUS_PARSE || bad != NULL || pmf_last_error() == NULL) {
        return 12;
    }
    printf("%s\n", pmf_last_error());
    pmf_instance_free(inst);
    return 0;
}
