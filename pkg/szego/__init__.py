# Szegő 方法求无穷 Toeplitz 矩阵逆
