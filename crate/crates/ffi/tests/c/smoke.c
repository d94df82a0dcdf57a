#include <math.h>
#include <stdio.h>
#include "robinbox.h"

int main(void) {
    double w[2] = {1.0, 1.0};
    RbBox *b = NULL;
    double s = 0.0, l2 = 1.0;
    if (rb_box_new(w, 2, &b) != RB_STATUS_OK) return 1;
    if (rb_box_steklov(b, &s) != RB_STATUS_OK) return 2;
    if (rb_box_lambda2(b, -s, &l2) != RB_STATUS_OK) return 3;
    if (fabs(l2) > 1e-9) return 4;
    if (rb_box_ratio(b, 0.0, &l2) != RB_STATUS_ALPHA_ZERO) return 5;
    rb_box_free(b);
    printf("%.6f\n", s);
    return 0;
}
