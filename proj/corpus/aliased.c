// Loops rejected by the safety conditions: the counter's address escapes,
// and another counter is written in the body.
// seed: n=4
int sink(int *p) {
  return 0;
}

int main(int n) {
  int i;
  int j;
  int r = 0;
  for (i = 0; i < 10; i++) {
    sink(&i);
    r = r + 1;
  }
  for (j = 0; j < 10; j++) {
    if (r > n) {
      j = j + 1;
    }
    r = r + 2;
  }
  return r;
}
