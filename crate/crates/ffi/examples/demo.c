/* Minimal consumer of the C ABI. Build from the workspace root with:
 *
 *   cargo build -p veronese-fsig-ffi
 *   cc crates/ffi/examples/demo.c -Icrates/ffi/include \
 *      target/debug/libveronese_fsig_ffi.a -lpthread -ldl -lm -o demo
 */
#include <assert.h>
#include <stdio.h>
#include <string.h>

#include "veronese_fsig.h"

int main(void) {
    VfsigDecomposition *dec = NULL;
    assert(vfsig_decompose(2, 2, 3, 1, 0, &dec) == VFSIG_STATUS_OK);
    printf("classes: %u\n", vfsig_decomposition_class_count(dec));
    for (uint32_t m = 0; m < vfsig_decomposition_class_count(dec); m++) {
        char *v = vfsig_decomposition_multiplicity(dec, m);
        printf("  class %u: %s\n", m, v);
        vfsig_string_free(v);
    }
    vfsig_decomposition_free(dec);

    char *estimate = NULL;
    assert(vfsig_f_signature(2, 2, 3, 1, &estimate) == VFSIG_STATUS_OK);
    printf("F-signature estimate: %s\n", estimate);
    vfsig_string_free(estimate);

    bool holds;
    uint64_t rank, expected;
    assert(vfsig_verify_minors(3, 3, 0, &holds, &rank, &expected) == VFSIG_STATUS_OK);
    printf("minor span check n=3 r=3: holds=%d (rank %llu/%llu)\n", holds,
           (unsigned long long)rank, (unsigned long long)expected);
    return 0;
}
