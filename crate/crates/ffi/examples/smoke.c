/* Build: cargo build -p revdist-ffi
 *        cc crates/ffi/examples/smoke.c -Icrates/ffi/include \
 *           target/debug/librevdist_ffi.a -lpthread -ldl -lm -o smoke */
#include <stdio.h>
#include "revdist.h"

int main(void) {
    RdSignedPerm *perm = NULL;
    if (rd_perm_parse("-5 1 -3 2 4", &perm) != RD_STATUS_OK) {
        fprintf(stderr, "parse: %s\n", rd_last_error_message());
        return 1;
    }
    RdBoundReport report;
    if (rd_check_equivalence(perm, &report) != RD_STATUS_OK) {
        fprintf(stderr, "bounds: %s\n", rd_last_error_message());
        return 1;
    }
    size_t exact = 0;
    rd_exact_distance(perm, 0, &exact);
    printf("bound=%zu exact=%zu\n", report.bound, exact);
    rd_perm_free(perm);
    return report.bound == 4 && exact == 4 ? 0 : 1;
}
