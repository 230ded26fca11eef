#include <math.h>
#include <stdlib.h>

#define MIN(a, b) ((a) < (b) ? (a) : (b))

int kernel(double *restrict eta_vec, double *restrict m_vec, double *restrict rec_vec, double *restrict srca_vec, double *restrict v_vec, const int time_m, const int time_M)
{
  double (*restrict eta)[61] = (double (*)[61]) eta_vec;
  double (*restrict m)[61] = (double (*)[61]) m_vec;
  double (*q0)[61] = malloc(sizeof(double[61][61]));
  double (*q1)[61] = malloc(sizeof(double[61][61]));
  double (*q2)[61] = malloc(sizeof(double[61][61]));
  double (*q3)[61] = malloc(sizeof(double[61][61]));
  double (*restrict rec)[101] = (double (*)[101]) rec_vec;
  double (*restrict srca)[1] = (double (*)[1]) srca_vec;
  double (*restrict v)[61][61] = (double (*)[61][61]) v_vec;
  /* arrays are allocated with 64-byte alignment */

  /* time-invariant precomputation */
  #pragma omp parallel for
  for (int x = 0; x < 61; x += 1)
  {
    #pragma omp simd
    for (int y = 0; y < 61; y += 1)
    {
      q0[x][y] = 141.42135623730948 * eta[x][y];
    }
  }
  #pragma omp parallel for
  for (int x = 0; x < 61; x += 1)
  {
    #pragma omp simd
    for (int y = 0; y < 61; y += 1)
    {
      q1[x][y] = 200.0 * m[x][y];
    }
  }
  #pragma omp parallel for
  for (int x = 0; x < 61; x += 1)
  {
    #pragma omp simd
    for (int y = 0; y < 61; y += 1)
    {
      q2[x][y] = (-100.0) * m[x][y];
    }
  }
  #pragma omp parallel for
  for (int x = 0; x < 61; x += 1)
  {
    #pragma omp simd
    for (int y = 0; y < 61; y += 1)
    {
      q3[x][y] = 1.0 / (100.0 * (1.414213562373095 * eta[x][y] + m[x][y]));
    }
  }

  for (int time = time_M - 1; time >= time_m; time -= 1)
  {
    const int v_tm1 = ((time - 1) % 3 + 3) % 3;
    const int v_t0 = ((time) % 3 + 3) % 3;
    const int v_tp1 = ((time + 1) % 3 + 3) % 3;
    /* update v */
    #pragma omp parallel for
    for (int x_blk = 1; x_blk < 60; x_blk += 16)
    {
      for (int x = x_blk; x < MIN(x_blk + 16, 60); x += 1)
      {
        #pragma omp simd
        for (int y = 1; y < 60; y += 1)
        {
          v[v_tm1][x][y] = (q0[x][y] * v[v_t0][x][y] + q1[x][y] * v[v_t0][x][y] + q2[x][y] * v[v_tp1][x][y] + (-7.999999999999998) * v[v_t0][x][y] + 1.9999999999999996 * (v[v_t0][x][y - 1] + v[v_t0][x][y + 1] + v[v_t0][x - 1][y] + v[v_t0][x + 1][y])) * q3[x][y];
        }
      }
    }
    /* inject rec into v */
    {
      v[v_tm1][11][14] = v[v_tm1][11][14] + 1.9999999999999996 * rec[time][0] / m[11][14];
      v[v_tm1][11][14] = v[v_tm1][11][14] + 0.620000000000001 * (1.9999999999999996 * rec[time][1] / m[11][14]);
      v[v_tm1][12][14] = v[v_tm1][12][14] + 0.379999999999999 * (1.9999999999999996 * rec[time][1] / m[12][14]);
      v[v_tm1][11][14] = v[v_tm1][11][14] + 0.2400000000000002 * (1.9999999999999996 * rec[time][2] / m[11][14]);
      v[v_tm1][12][14] = v[v_tm1][12][14] + 0.7599999999999998 * (1.9999999999999996 * rec[time][2] / m[12][14]);
      v[v_tm1][12][14] = v[v_tm1][12][14] + 0.8599999999999994 * (1.9999999999999996 * rec[time][3] / m[12][14]);
      v[v_tm1][13][14] = v[v_tm1][13][14] + 0.14000000000000057 * (1.9999999999999996 * rec[time][3] / m[13][14]);
      v[v_tm1][12][14] = v[v_tm1][12][14] + 0.4800000000000004 * (1.9999999999999996 * rec[time][4] / m[12][14]);
      v[v_tm1][13][14] = v[v_tm1][13][14] + 0.5199999999999996 * (1.9999999999999996 * rec[time][4] / m[13][14]);
      v[v_tm1][12][14] = v[v_tm1][12][14] + 0.09999999999999964 * (1.9999999999999996 * rec[time][5] / m[12][14]);
      v[v_tm1][13][14] = v[v_tm1][13][14] + 0.9000000000000004 * (1.9999999999999996 * rec[time][5] / m[13][14]);
      v[v_tm1][13][14] = v[v_tm1][13][14] + 0.7199999999999989 * (1.9999999999999996 * rec[time][6] / m[13][14]);
      v[v_tm1][14][14] = v[v_tm1][14][14] + 0.28000000000000114 * (1.9999999999999996 * rec[time][6] / m[14][14]);
      v[v_tm1][13][14] = v[v_tm1][13][14] + 0.33999999999999986 * (1.9999999999999996 * rec[time][7] / m[13][14]);
      v[v_tm1][14][14] = v[v_tm1][14][14] + 0.6600000000000001 * (1.9999999999999996 * rec[time][7] / m[14][14]);
      v[v_tm1][14][14] = v[v_tm1][14][14] + 0.9599999999999991 * (1.9999999999999996 * rec[time][8] / m[14][14]);
      v[v_tm1][15][14] = v[v_tm1][15][14] + 0.040000000000000924 * (1.9999999999999996 * rec[time][8] / m[15][14]);
      v[v_tm1][14][14] = v[v_tm1][14][14] + 0.5800000000000018 * (1.9999999999999996 * rec[time][9] / m[14][14]);
      v[v_tm1][15][14] = v[v_tm1][15][14] + 0.41999999999999815 * (1.9999999999999996 * rec[time][9] / m[15][14]);
      v[v_tm1][14][14] = v[v_tm1][14][14] + 0.1999999999999993 * (1.9999999999999996 * rec[time][10] / m[14][14]);
      v[v_tm1][15][14] = v[v_tm1][15][14] + 0.8000000000000007 * (1.9999999999999996 * rec[time][10] / m[15][14]);
      v[v_tm1][15][14] = v[v_tm1][15][14] + 0.8199999999999985 * (1.9999999999999996 * rec[time][11] / m[15][14]);
      v[v_tm1][16][14] = v[v_tm1][16][14] + 0.1800000000000015 * (1.9999999999999996 * rec[time][11] / m[16][14]);
      v[v_tm1][15][14] = v[v_tm1][15][14] + 0.4400000000000013 * (1.9999999999999996 * rec[time][12] / m[15][14]);
      v[v_tm1][16][14] = v[v_tm1][16][14] + 0.5599999999999987 * (1.9999999999999996 * rec[time][12] / m[16][14]);
      v[v_tm1][15][14] = v[v_tm1][15][14] + 0.05999999999999872 * (1.9999999999999996 * rec[time][13] / m[15][14]);
      v[v_tm1][16][14] = v[v_tm1][16][14] + 0.9400000000000013 * (1.9999999999999996 * rec[time][13] / m[16][14]);
      v[v_tm1][16][14] = v[v_tm1][16][14] + 0.6799999999999997 * (1.9999999999999996 * rec[time][14] / m[16][14]);
      v[v_tm1][17][14] = v[v_tm1][17][14] + 0.3200000000000003 * (1.9999999999999996 * rec[time][14] / m[17][14]);
      v[v_tm1][16][14] = v[v_tm1][16][14] + 0.3000000000000007 * (1.9999999999999996 * rec[time][15] / m[16][14]);
      v[v_tm1][17][14] = v[v_tm1][17][14] + 0.6999999999999993 * (1.9999999999999996 * rec[time][15] / m[17][14]);
      v[v_tm1][17][14] = v[v_tm1][17][14] + 0.9199999999999982 * (1.9999999999999996 * rec[time][16] / m[17][14]);
      v[v_tm1][18][14] = v[v_tm1][18][14] + 0.08000000000000185 * (1.9999999999999996 * rec[time][16] / m[18][14]);
      v[v_tm1][17][14] = v[v_tm1][17][14] + 0.5399999999999991 * (1.9999999999999996 * rec[time][17] / m[17][14]);
      v[v_tm1][18][14] = v[v_tm1][18][14] + 0.46000000000000085 * (1.9999999999999996 * rec[time][17] / m[18][14]);
      v[v_tm1][17][14] = v[v_tm1][17][14] + 0.16000000000000014 * (1.9999999999999996 * rec[time][18] / m[17][14]);
      v[v_tm1][18][14] = v[v_tm1][18][14] + 0.8399999999999999 * (1.9999999999999996 * rec[time][18] / m[18][14]);
      v[v_tm1][18][14] = v[v_tm1][18][14] + 0.7800000000000011 * (1.9999999999999996 * rec[time][19] / m[18][14]);
      v[v_tm1][19][14] = v[v_tm1][19][14] + 0.21999999999999886 * (1.9999999999999996 * rec[time][19] / m[19][14]);
      v[v_tm1][18][14] = v[v_tm1][18][14] + 0.3999999999999986 * (1.9999999999999996 * rec[time][20] / m[18][14]);
      v[v_tm1][19][14] = v[v_tm1][19][14] + 0.6000000000000014 * (1.9999999999999996 * rec[time][20] / m[19][14]);
      v[v_tm1][18][14] = v[v_tm1][18][14] + 0.019999999999999574 * (1.9999999999999996 * rec[time][21] / m[18][14]);
      v[v_tm1][19][14] = v[v_tm1][19][14] + 0.9800000000000004 * (1.9999999999999996 * rec[time][21] / m[19][14]);
      v[v_tm1][19][14] = v[v_tm1][19][14] + 0.6400000000000006 * (1.9999999999999996 * rec[time][22] / m[19][14]);
      v[v_tm1][20][14] = v[v_tm1][20][14] + 0.35999999999999943 * (1.9999999999999996 * rec[time][22] / m[20][14]);
      v[v_tm1][19][14] = v[v_tm1][19][14] + 0.259999999999998 * (1.9999999999999996 * rec[time][23] / m[19][14]);
      v[v_tm1][20][14] = v[v_tm1][20][14] + 0.740000000000002 * (1.9999999999999996 * rec[time][23] / m[20][14]);
      v[v_tm1][20][14] = v[v_tm1][20][14] + 0.8800000000000026 * (1.9999999999999996 * rec[time][24] / m[20][14]);
      v[v_tm1][21][14] = v[v_tm1][21][14] + 0.11999999999999744 * (1.9999999999999996 * rec[time][24] / m[21][14]);
      v[v_tm1][20][14] = v[v_tm1][20][14] + 0.5 * (1.9999999999999996 * rec[time][25] / m[20][14]);
      v[v_tm1][21][14] = v[v_tm1][21][14] + 0.5 * (1.9999999999999996 * rec[time][25] / m[21][14]);
      v[v_tm1][20][14] = v[v_tm1][20][14] + 0.11999999999999744 * (1.9999999999999996 * rec[time][26] / m[20][14]);
      v[v_tm1][21][14] = v[v_tm1][21][14] + 0.8800000000000026 * (1.9999999999999996 * rec[time][26] / m[21][14]);
      v[v_tm1][21][14] = v[v_tm1][21][14] + 0.740000000000002 * (1.9999999999999996 * rec[time][27] / m[21][14]);
      v[v_tm1][22][14] = v[v_tm1][22][14] + 0.259999999999998 * (1.9999999999999996 * rec[time][27] / m[22][14]);
      v[v_tm1][21][14] = v[v_tm1][21][14] + 0.35999999999999943 * (1.9999999999999996 * rec[time][28] / m[21][14]);
      v[v_tm1][22][14] = v[v_tm1][22][14] + 0.6400000000000006 * (1.9999999999999996 * rec[time][28] / m[22][14]);
      v[v_tm1][22][14] = v[v_tm1][22][14] + 0.9800000000000004 * (1.9999999999999996 * rec[time][29] / m[22][14]);
      v[v_tm1][23][14] = v[v_tm1][23][14] + 0.019999999999999574 * (1.9999999999999996 * rec[time][29] / m[23][14]);
      v[v_tm1][22][14] = v[v_tm1][22][14] + 0.6000000000000014 * (1.9999999999999996 * rec[time][30] / m[22][14]);
      v[v_tm1][23][14] = v[v_tm1][23][14] + 0.3999999999999986 * (1.9999999999999996 * rec[time][30] / m[23][14]);
      v[v_tm1][22][14] = v[v_tm1][22][14] + 0.21999999999999886 * (1.9999999999999996 * rec[time][31] / m[22][14]);
      v[v_tm1][23][14] = v[v_tm1][23][14] + 0.7800000000000011 * (1.9999999999999996 * rec[time][31] / m[23][14]);
      v[v_tm1][23][14] = v[v_tm1][23][14] + 0.8399999999999999 * (1.9999999999999996 * rec[time][32] / m[23][14]);
      v[v_tm1][24][14] = v[v_tm1][24][14] + 0.16000000000000014 * (1.9999999999999996 * rec[time][32] / m[24][14]);
      v[v_tm1][23][14] = v[v_tm1][23][14] + 0.46000000000000085 * (1.9999999999999996 * rec[time][33] / m[23][14]);
      v[v_tm1][24][14] = v[v_tm1][24][14] + 0.5399999999999991 * (1.9999999999999996 * rec[time][33] / m[24][14]);
      v[v_tm1][23][14] = v[v_tm1][23][14] + 0.08000000000000185 * (1.9999999999999996 * rec[time][34] / m[23][14]);
      v[v_tm1][24][14] = v[v_tm1][24][14] + 0.9199999999999982 * (1.9999999999999996 * rec[time][34] / m[24][14]);
      v[v_tm1][24][14] = v[v_tm1][24][14] + 0.6999999999999993 * (1.9999999999999996 * rec[time][35] / m[24][14]);
      v[v_tm1][25][14] = v[v_tm1][25][14] + 0.3000000000000007 * (1.9999999999999996 * rec[time][35] / m[25][14]);
      v[v_tm1][24][14] = v[v_tm1][24][14] + 0.3200000000000003 * (1.9999999999999996 * rec[time][36] / m[24][14]);
      v[v_tm1][25][14] = v[v_tm1][25][14] + 0.6799999999999997 * (1.9999999999999996 * rec[time][36] / m[25][14]);
      v[v_tm1][25][14] = v[v_tm1][25][14] + 0.9400000000000013 * (1.9999999999999996 * rec[time][37] / m[25][14]);
      v[v_tm1][26][14] = v[v_tm1][26][14] + 0.05999999999999872 * (1.9999999999999996 * rec[time][37] / m[26][14]);
      v[v_tm1][25][14] = v[v_tm1][25][14] + 0.5599999999999987 * (1.9999999999999996 * rec[time][38] / m[25][14]);
      v[v_tm1][26][14] = v[v_tm1][26][14] + 0.4400000000000013 * (1.9999999999999996 * rec[time][38] / m[26][14]);
      v[v_tm1][25][14] = v[v_tm1][25][14] + 0.17999999999999972 * (1.9999999999999996 * rec[time][39] / m[25][14]);
      v[v_tm1][26][14] = v[v_tm1][26][14] + 0.8200000000000003 * (1.9999999999999996 * rec[time][39] / m[26][14]);
      v[v_tm1][26][14] = v[v_tm1][26][14] + 0.8000000000000007 * (1.9999999999999996 * rec[time][40] / m[26][14]);
      v[v_tm1][27][14] = v[v_tm1][27][14] + 0.1999999999999993 * (1.9999999999999996 * rec[time][40] / m[27][14]);
      v[v_tm1][26][14] = v[v_tm1][26][14] + 0.41999999999999815 * (1.9999999999999996 * rec[time][41] / m[26][14]);
      v[v_tm1][27][14] = v[v_tm1][27][14] + 0.5800000000000018 * (1.9999999999999996 * rec[time][41] / m[27][14]);
      v[v_tm1][26][14] = v[v_tm1][26][14] + 0.03999999999999915 * (1.9999999999999996 * rec[time][42] / m[26][14]);
      v[v_tm1][27][14] = v[v_tm1][27][14] + 0.9600000000000009 * (1.9999999999999996 * rec[time][42] / m[27][14]);
      v[v_tm1][27][14] = v[v_tm1][27][14] + 0.6600000000000037 * (1.9999999999999996 * rec[time][43] / m[27][14]);
      v[v_tm1][28][14] = v[v_tm1][28][14] + 0.3399999999999963 * (1.9999999999999996 * rec[time][43] / m[28][14]);
      v[v_tm1][27][14] = v[v_tm1][27][14] + 0.28000000000000114 * (1.9999999999999996 * rec[time][44] / m[27][14]);
      v[v_tm1][28][14] = v[v_tm1][28][14] + 0.7199999999999989 * (1.9999999999999996 * rec[time][44] / m[28][14]);
      v[v_tm1][28][14] = v[v_tm1][28][14] + 0.8999999999999986 * (1.9999999999999996 * rec[time][45] / m[28][14]);
      v[v_tm1][29][14] = v[v_tm1][29][14] + 0.10000000000000142 * (1.9999999999999996 * rec[time][45] / m[29][14]);
      v[v_tm1][28][14] = v[v_tm1][28][14] + 0.5199999999999996 * (1.9999999999999996 * rec[time][46] / m[28][14]);
      v[v_tm1][29][14] = v[v_tm1][29][14] + 0.4800000000000004 * (1.9999999999999996 * rec[time][46] / m[29][14]);
      v[v_tm1][28][14] = v[v_tm1][28][14] + 0.13999999999999702 * (1.9999999999999996 * rec[time][47] / m[28][14]);
      v[v_tm1][29][14] = v[v_tm1][29][14] + 0.860000000000003 * (1.9999999999999996 * rec[time][47] / m[29][14]);
      v[v_tm1][29][14] = v[v_tm1][29][14] + 0.7600000000000016 * (1.9999999999999996 * rec[time][48] / m[29][14]);
      v[v_tm1][30][14] = v[v_tm1][30][14] + 0.23999999999999844 * (1.9999999999999996 * rec[time][48] / m[30][14]);
      v[v_tm1][29][14] = v[v_tm1][29][14] + 0.38000000000000256 * (1.9999999999999996 * rec[time][49] / m[29][14]);
      v[v_tm1][30][14] = v[v_tm1][30][14] + 0.6199999999999974 * (1.9999999999999996 * rec[time][49] / m[30][14]);
      v[v_tm1][30][14] = v[v_tm1][30][14] + 1.9999999999999996 * rec[time][50] / m[30][14];
      v[v_tm1][30][14] = v[v_tm1][30][14] + 0.6199999999999974 * (1.9999999999999996 * rec[time][51] / m[30][14]);
      v[v_tm1][31][14] = v[v_tm1][31][14] + 0.38000000000000256 * (1.9999999999999996 * rec[time][51] / m[31][14]);
      v[v_tm1][30][14] = v[v_tm1][30][14] + 0.23999999999999844 * (1.9999999999999996 * rec[time][52] / m[30][14]);
      v[v_tm1][31][14] = v[v_tm1][31][14] + 0.7600000000000016 * (1.9999999999999996 * rec[time][52] / m[31][14]);
      v[v_tm1][31][14] = v[v_tm1][31][14] + 0.860000000000003 * (1.9999999999999996 * rec[time][53] / m[31][14]);
      v[v_tm1][32][14] = v[v_tm1][32][14] + 0.13999999999999702 * (1.9999999999999996 * rec[time][53] / m[32][14]);
      v[v_tm1][31][14] = v[v_tm1][31][14] + 0.4800000000000004 * (1.9999999999999996 * rec[time][54] / m[31][14]);
      v[v_tm1][32][14] = v[v_tm1][32][14] + 0.5199999999999996 * (1.9999999999999996 * rec[time][54] / m[32][14]);
      v[v_tm1][31][14] = v[v_tm1][31][14] + 0.10000000000000142 * (1.9999999999999996 * rec[time][55] / m[31][14]);
      v[v_tm1][32][14] = v[v_tm1][32][14] + 0.8999999999999986 * (1.9999999999999996 * rec[time][55] / m[32][14]);
      v[v_tm1][32][14] = v[v_tm1][32][14] + 0.7199999999999989 * (1.9999999999999996 * rec[time][56] / m[32][14]);
      v[v_tm1][33][14] = v[v_tm1][33][14] + 0.28000000000000114 * (1.9999999999999996 * rec[time][56] / m[33][14]);
      v[v_tm1][32][14] = v[v_tm1][32][14] + 0.3399999999999963 * (1.9999999999999996 * rec[time][57] / m[32][14]);
      v[v_tm1][33][14] = v[v_tm1][33][14] + 0.6600000000000037 * (1.9999999999999996 * rec[time][57] / m[33][14]);
      v[v_tm1][33][14] = v[v_tm1][33][14] + 0.9600000000000009 * (1.9999999999999996 * rec[time][58] / m[33][14]);
      v[v_tm1][34][14] = v[v_tm1][34][14] + 0.03999999999999915 * (1.9999999999999996 * rec[time][58] / m[34][14]);
      v[v_tm1][33][14] = v[v_tm1][33][14] + 0.5799999999999983 * (1.9999999999999996 * rec[time][59] / m[33][14]);
      v[v_tm1][34][14] = v[v_tm1][34][14] + 0.4200000000000017 * (1.9999999999999996 * rec[time][59] / m[34][14]);
      v[v_tm1][33][14] = v[v_tm1][33][14] + 0.20000000000000284 * (1.9999999999999996 * rec[time][60] / m[33][14]);
      v[v_tm1][34][14] = v[v_tm1][34][14] + 0.7999999999999972 * (1.9999999999999996 * rec[time][60] / m[34][14]);
      v[v_tm1][34][14] = v[v_tm1][34][14] + 0.8200000000000003 * (1.9999999999999996 * rec[time][61] / m[34][14]);
      v[v_tm1][35][14] = v[v_tm1][35][14] + 0.17999999999999972 * (1.9999999999999996 * rec[time][61] / m[35][14]);
      v[v_tm1][34][14] = v[v_tm1][34][14] + 0.4399999999999977 * (1.9999999999999996 * rec[time][62] / m[34][14]);
      v[v_tm1][35][14] = v[v_tm1][35][14] + 0.5600000000000023 * (1.9999999999999996 * rec[time][62] / m[35][14]);
      v[v_tm1][34][14] = v[v_tm1][34][14] + 0.060000000000002274 * (1.9999999999999996 * rec[time][63] / m[34][14]);
      v[v_tm1][35][14] = v[v_tm1][35][14] + 0.9399999999999977 * (1.9999999999999996 * rec[time][63] / m[35][14]);
      v[v_tm1][35][14] = v[v_tm1][35][14] + 0.6799999999999997 * (1.9999999999999996 * rec[time][64] / m[35][14]);
      v[v_tm1][36][14] = v[v_tm1][36][14] + 0.3200000000000003 * (1.9999999999999996 * rec[time][64] / m[36][14]);
      v[v_tm1][35][14] = v[v_tm1][35][14] + 0.29999999999999716 * (1.9999999999999996 * rec[time][65] / m[35][14]);
      v[v_tm1][36][14] = v[v_tm1][36][14] + 0.7000000000000028 * (1.9999999999999996 * rec[time][65] / m[36][14]);
      v[v_tm1][36][14] = v[v_tm1][36][14] + 0.9200000000000017 * (1.9999999999999996 * rec[time][66] / m[36][14]);
      v[v_tm1][37][14] = v[v_tm1][37][14] + 0.0799999999999983 * (1.9999999999999996 * rec[time][66] / m[37][14]);
      v[v_tm1][36][14] = v[v_tm1][36][14] + 0.5399999999999991 * (1.9999999999999996 * rec[time][67] / m[36][14]);
      v[v_tm1][37][14] = v[v_tm1][37][14] + 0.46000000000000085 * (1.9999999999999996 * rec[time][67] / m[37][14]);
      v[v_tm1][36][14] = v[v_tm1][36][14] + 0.1600000000000037 * (1.9999999999999996 * rec[time][68] / m[36][14]);
      v[v_tm1][37][14] = v[v_tm1][37][14] + 0.8399999999999963 * (1.9999999999999996 * rec[time][68] / m[37][14]);
      v[v_tm1][37][14] = v[v_tm1][37][14] + 0.7800000000000011 * (1.9999999999999996 * rec[time][69] / m[37][14]);
      v[v_tm1][38][14] = v[v_tm1][38][14] + 0.21999999999999886 * (1.9999999999999996 * rec[time][69] / m[38][14]);
      v[v_tm1][37][14] = v[v_tm1][37][14] + 0.3999999999999986 * (1.9999999999999996 * rec[time][70] / m[37][14]);
      v[v_tm1][38][14] = v[v_tm1][38][14] + 0.6000000000000014 * (1.9999999999999996 * rec[time][70] / m[38][14]);
      v[v_tm1][37][14] = v[v_tm1][37][14] + 0.01999999999999602 * (1.9999999999999996 * rec[time][71] / m[37][14]);
      v[v_tm1][38][14] = v[v_tm1][38][14] + 0.980000000000004 * (1.9999999999999996 * rec[time][71] / m[38][14]);
      v[v_tm1][38][14] = v[v_tm1][38][14] + 0.6400000000000006 * (1.9999999999999996 * rec[time][72] / m[38][14]);
      v[v_tm1][39][14] = v[v_tm1][39][14] + 0.35999999999999943 * (1.9999999999999996 * rec[time][72] / m[39][14]);
      v[v_tm1][38][14] = v[v_tm1][38][14] + 0.2600000000000051 * (1.9999999999999996 * rec[time][73] / m[38][14]);
      v[v_tm1][39][14] = v[v_tm1][39][14] + 0.7399999999999949 * (1.9999999999999996 * rec[time][73] / m[39][14]);
      v[v_tm1][39][14] = v[v_tm1][39][14] + 0.8800000000000026 * (1.9999999999999996 * rec[time][74] / m[39][14]);
      v[v_tm1][40][14] = v[v_tm1][40][14] + 0.11999999999999744 * (1.9999999999999996 * rec[time][74] / m[40][14]);
      v[v_tm1][39][14] = v[v_tm1][39][14] + 0.5 * (1.9999999999999996 * rec[time][75] / m[39][14]);
      v[v_tm1][40][14] = v[v_tm1][40][14] + 0.5 * (1.9999999999999996 * rec[time][75] / m[40][14]);
      v[v_tm1][39][14] = v[v_tm1][39][14] + 0.11999999999999744 * (1.9999999999999996 * rec[time][76] / m[39][14]);
      v[v_tm1][40][14] = v[v_tm1][40][14] + 0.8800000000000026 * (1.9999999999999996 * rec[time][76] / m[40][14]);
      v[v_tm1][40][14] = v[v_tm1][40][14] + 0.7399999999999949 * (1.9999999999999996 * rec[time][77] / m[40][14]);
      v[v_tm1][41][14] = v[v_tm1][41][14] + 0.2600000000000051 * (1.9999999999999996 * rec[time][77] / m[41][14]);
      v[v_tm1][40][14] = v[v_tm1][40][14] + 0.35999999999999943 * (1.9999999999999996 * rec[time][78] / m[40][14]);
      v[v_tm1][41][14] = v[v_tm1][41][14] + 0.6400000000000006 * (1.9999999999999996 * rec[time][78] / m[41][14]);
      v[v_tm1][41][14] = v[v_tm1][41][14] + 0.980000000000004 * (1.9999999999999996 * rec[time][79] / m[41][14]);
      v[v_tm1][42][14] = v[v_tm1][42][14] + 0.01999999999999602 * (1.9999999999999996 * rec[time][79] / m[42][14]);
      v[v_tm1][41][14] = v[v_tm1][41][14] + 0.6000000000000014 * (1.9999999999999996 * rec[time][80] / m[41][14]);
      v[v_tm1][42][14] = v[v_tm1][42][14] + 0.3999999999999986 * (1.9999999999999996 * rec[time][80] / m[42][14]);
      v[v_tm1][41][14] = v[v_tm1][41][14] + 0.21999999999999886 * (1.9999999999999996 * rec[time][81] / m[41][14]);
      v[v_tm1][42][14] = v[v_tm1][42][14] + 0.7800000000000011 * (1.9999999999999996 * rec[time][81] / m[42][14]);
      v[v_tm1][42][14] = v[v_tm1][42][14] + 0.8399999999999963 * (1.9999999999999996 * rec[time][82] / m[42][14]);
      v[v_tm1][43][14] = v[v_tm1][43][14] + 0.1600000000000037 * (1.9999999999999996 * rec[time][82] / m[43][14]);
      v[v_tm1][42][14] = v[v_tm1][42][14] + 0.46000000000000085 * (1.9999999999999996 * rec[time][83] / m[42][14]);
      v[v_tm1][43][14] = v[v_tm1][43][14] + 0.5399999999999991 * (1.9999999999999996 * rec[time][83] / m[43][14]);
      v[v_tm1][42][14] = v[v_tm1][42][14] + 0.0799999999999983 * (1.9999999999999996 * rec[time][84] / m[42][14]);
      v[v_tm1][43][14] = v[v_tm1][43][14] + 0.9200000000000017 * (1.9999999999999996 * rec[time][84] / m[43][14]);
      v[v_tm1][43][14] = v[v_tm1][43][14] + 0.7000000000000028 * (1.9999999999999996 * rec[time][85] / m[43][14]);
      v[v_tm1][44][14] = v[v_tm1][44][14] + 0.29999999999999716 * (1.9999999999999996 * rec[time][85] / m[44][14]);
      v[v_tm1][43][14] = v[v_tm1][43][14] + 0.3200000000000003 * (1.9999999999999996 * rec[time][86] / m[43][14]);
      v[v_tm1][44][14] = v[v_tm1][44][14] + 0.6799999999999997 * (1.9999999999999996 * rec[time][86] / m[44][14]);
      v[v_tm1][44][14] = v[v_tm1][44][14] + 0.9399999999999977 * (1.9999999999999996 * rec[time][87] / m[44][14]);
      v[v_tm1][45][14] = v[v_tm1][45][14] + 0.060000000000002274 * (1.9999999999999996 * rec[time][87] / m[45][14]);
      v[v_tm1][44][14] = v[v_tm1][44][14] + 0.5600000000000023 * (1.9999999999999996 * rec[time][88] / m[44][14]);
      v[v_tm1][45][14] = v[v_tm1][45][14] + 0.4399999999999977 * (1.9999999999999996 * rec[time][88] / m[45][14]);
      v[v_tm1][44][14] = v[v_tm1][44][14] + 0.17999999999999972 * (1.9999999999999996 * rec[time][89] / m[44][14]);
      v[v_tm1][45][14] = v[v_tm1][45][14] + 0.8200000000000003 * (1.9999999999999996 * rec[time][89] / m[45][14]);
      v[v_tm1][45][14] = v[v_tm1][45][14] + 0.7999999999999972 * (1.9999999999999996 * rec[time][90] / m[45][14]);
      v[v_tm1][46][14] = v[v_tm1][46][14] + 0.20000000000000284 * (1.9999999999999996 * rec[time][90] / m[46][14]);
      v[v_tm1][45][14] = v[v_tm1][45][14] + 0.4200000000000017 * (1.9999999999999996 * rec[time][91] / m[45][14]);
      v[v_tm1][46][14] = v[v_tm1][46][14] + 0.5799999999999983 * (1.9999999999999996 * rec[time][91] / m[46][14]);
      v[v_tm1][45][14] = v[v_tm1][45][14] + 0.03999999999999915 * (1.9999999999999996 * rec[time][92] / m[45][14]);
      v[v_tm1][46][14] = v[v_tm1][46][14] + 0.9600000000000009 * (1.9999999999999996 * rec[time][92] / m[46][14]);
      v[v_tm1][46][14] = v[v_tm1][46][14] + 0.6600000000000037 * (1.9999999999999996 * rec[time][93] / m[46][14]);
      v[v_tm1][47][14] = v[v_tm1][47][14] + 0.3399999999999963 * (1.9999999999999996 * rec[time][93] / m[47][14]);
      v[v_tm1][46][14] = v[v_tm1][46][14] + 0.28000000000000114 * (1.9999999999999996 * rec[time][94] / m[46][14]);
      v[v_tm1][47][14] = v[v_tm1][47][14] + 0.7199999999999989 * (1.9999999999999996 * rec[time][94] / m[47][14]);
      v[v_tm1][47][14] = v[v_tm1][47][14] + 0.8999999999999986 * (1.9999999999999996 * rec[time][95] / m[47][14]);
      v[v_tm1][48][14] = v[v_tm1][48][14] + 0.10000000000000142 * (1.9999999999999996 * rec[time][95] / m[48][14]);
      v[v_tm1][47][14] = v[v_tm1][47][14] + 0.519999999999996 * (1.9999999999999996 * rec[time][96] / m[47][14]);
      v[v_tm1][48][14] = v[v_tm1][48][14] + 0.480000000000004 * (1.9999999999999996 * rec[time][96] / m[48][14]);
      v[v_tm1][47][14] = v[v_tm1][47][14] + 0.14000000000000057 * (1.9999999999999996 * rec[time][97] / m[47][14]);
      v[v_tm1][48][14] = v[v_tm1][48][14] + 0.8599999999999994 * (1.9999999999999996 * rec[time][97] / m[48][14]);
      v[v_tm1][48][14] = v[v_tm1][48][14] + 0.7600000000000051 * (1.9999999999999996 * rec[time][98] / m[48][14]);
      v[v_tm1][49][14] = v[v_tm1][49][14] + 0.23999999999999488 * (1.9999999999999996 * rec[time][98] / m[49][14]);
      v[v_tm1][48][14] = v[v_tm1][48][14] + 0.38000000000000256 * (1.9999999999999996 * rec[time][99] / m[48][14]);
      v[v_tm1][49][14] = v[v_tm1][49][14] + 0.6199999999999974 * (1.9999999999999996 * rec[time][99] / m[49][14]);
      v[v_tm1][49][14] = v[v_tm1][49][14] + 1.9999999999999996 * rec[time][100] / m[49][14];
    }
    /* interpolate into srca */
    {
      srca[time][0] = v[v_tm1][30][12];
    }
  }
  free(q0);
  free(q1);
  free(q2);
  free(q3);
  return 0;
}
