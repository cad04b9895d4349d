/* Build the library first: cargo build -p cube-orient-ffi
 * cc -std=c99 -Iinclude c/smoke.c ../../target/debug/libcube_orient_ffi.a -lpthread -ldl -lm -o smoke */
#include <stdio.h>
#include "cube_orient.h"

int main(void) {
    CubeOrientation *o = NULL;
    if (cube_orientation_inductive(3, &o) != CUBE_STATUS_OK) {
        return 1;
    }
    bool eulerian = false, connected = false;
    cube_orientation_is_eulerian(o, &eulerian);
    cube_orientation_strongly_k_connected(o, 3, &connected);
    printf("d=%u eulerian=%d strongly_3_connected=%d\n", cube_orientation_dim(o), eulerian, connected);

    char *text = cube_orientation_to_text(o);
    fputs(text, stdout);
    cube_string_free(text);
    cube_orientation_free(o);

    uint64_t bv = 0;
    cube_harper_bv(17, 6, &bv);
    printf("b_v(17, Q_6) = %llu\n", (unsigned long long)bv);

    if (cube_orientation_euler_tour(3, &o) != CUBE_STATUS_NOT_EULERIAN) {
        return 1;
    }
    char msg[128];
    cube_last_error_message(msg, sizeof msg);
    printf("expected error: %s\n", msg);
    return eulerian && connected && bv == 23 ? 0 : 1;
}
