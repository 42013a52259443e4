#include <stdio.h>
#include <string.h>
#include "scroll_ulrich.h"

#define CHECK(c) do { if (!(c)) { fprintf(stderr, "failed: %s (line %d)\n", #c, __LINE__); return 1; } } while (0)

int main(void) {
    SuParams *p = NULL;
    CHECK(su_params_sporadic(1, &p) == SU_STATUS_OK);

    int64_t lo[4], hi[4], chi;
    CHECK(su_coh_scroll_line(p, 2, -3, -4, lo, hi, &chi) == SU_STATUS_OK);
    CHECK(lo[1] == 3 && hi[1] == 3 && chi == -3);

    SuUlrich u;
    CHECK(su_is_ulrich_line(p, 2, -1, -2, &u) == SU_STATUS_OK);
    CHECK(u == SU_ULRICH_ULRICH);

    SuTower *tw = NULL;
    CHECK(su_tower_new(p, "M1,M2", &tw) == SU_STATUS_OK);
    int64_t dim;
    CHECK(su_tower_moduli_dim(tw, &dim) == SU_STATUS_OK);
    CHECK(dim == 5);
    su_tower_free(tw);

    SuParams *bad = NULL;
    CHECK(su_params_new(0, 3, 3, &bad) == SU_STATUS_INVALID_PARAMS);
    CHECK(bad == NULL);
    CHECK(strlen(su_status_message(SU_STATUS_INVALID_PARAMS)) > 0);

    su_params_free(p);
    printf("ok\n");
    return 0;
}
