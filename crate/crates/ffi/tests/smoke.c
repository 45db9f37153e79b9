#include <stdio.h>
#include <string.h>

#include "d4verify.h"

#define CHECK(cond)                                               \
    do {                                                          \
        if (!(cond)) {                                            \
            fprintf(stderr, "%s:%d: %s\n", __FILE__, __LINE__, #cond); \
            return 1;                                             \
        }                                                         \
    } while (0)

int main(void) {
    uint64_t n = 0;
    CHECK(d4v_jacobi_count(3, &n) == D4V_STATUS_OK && n == 96);
    CHECK(d4v_jacobi_count(0, &n) == D4V_STATUS_INVALID_ARGUMENT);
    CHECK(d4v_last_error() != NULL);

    D4vShell *shell = NULL;
    CHECK(d4v_shell_new(1, &shell) == D4V_STATUS_OK);
    CHECK(d4v_shell_len(shell) == 24);
    int64_t p[4];
    CHECK(d4v_shell_point(shell, 23, p) == D4V_STATUS_OK);
    CHECK(p[0] == 1 && p[1] == 1 && p[2] == 0 && p[3] == 0);
    d4v_shell_free(shell);

    D4vTau2Table *t = NULL;
    CHECK(d4v_tau2_table_new(5, &t) == D4V_STATUS_OK);
    int64_t v = 0;
    CHECK(d4v_tau2_get(t, 5, &v) == D4V_STATUS_OK && v == -210);
    char *s = d4v_tau2_get_string(t, 2);
    CHECK(s != NULL && strcmp(s, "-8") == 0);
    d4v_string_free(s);
    d4v_tau2_table_free(t);

    int64_t num = 0, den = 0;
    CHECK(d4v_lp_design_bound(&num, &den) == D4V_STATUS_OK && num == 12 && den == 1);
    printf("ok\n");
    return 0;
}
