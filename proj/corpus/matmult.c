// Square matrix multiplication, three nested counting loops.
// seed: s=2
int A[100];
int B[100];
int C[100];

void init(int s) {
  int k;
  for (k = 0; k < 100; k++) {
    A[k] = k % 7 + s;
    B[k] = k % 5 - s;
  }
}

int main(int s) {
  int i;
  int j;
  int k;
  init(s);
  for (i = 0; i < 10; i++) {
    for (j = 0; j < 10; j++) {
      C[i * 10 + j] = 0;
      for (k = 0; k < 10; k++) {
        C[i * 10 + j] = C[i * 10 + j] + A[i * 10 + k] * B[k * 10 + j];
      }
    }
  }
  return C[99];
}
