// FIR filter: the outer bound comes from a clamped parameter.
// seed: len=20
// seed: len=500
// seed: len=-4
int coeff[8];
int input[128];
int output[128];

int main(int len) {
  int n;
  int t;
  int acc;
  if (len > 120) {
    len = 120;
  }
  if (len < 0) {
    len = 0;
  }
  for (t = 0; t < 8; t++) {
    coeff[t] = t + 1;
  }
  for (n = 0; n < len; n++) {
    input[n] = n % 11;
  }
  for (n = 7; n < len; n++) {
    acc = 0;
    for (t = 0; t < 8; t++) {
      acc = acc + coeff[t] * input[n - t];
    }
    output[n] = acc;
  }
  return output[7];
}
